#ifndef JETVAR_LINEAR_SOLVE_HPP
#define JETVAR_LINEAR_SOLVE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <jetvar/expr.hpp>

namespace jetvar::detail
{

// Sparse row: column -> coefficient.
using SparseRow = std::map<std::size_t, Rational>;

// Solves A c = b exactly by Gauss-Jordan elimination. Pivots are taken at the
// lowest available column and free unknowns are set to zero, so the result is
// deterministic. Returns nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve(std::vector<SparseRow> rows, std::vector<Rational> rhs,
                                                  std::size_t unknowns)
{
    // pivots[col] = index into `reduced`
    std::map<std::size_t, std::size_t> pivots;
    std::vector<SparseRow> reduced;
    std::vector<Rational> reduced_rhs;

    for (std::size_t r = 0; r < rows.size(); ++r) {
        SparseRow row = std::move(rows[r]);
        Rational b = rhs[r];
        // Eliminate known pivots, lowest column first; reduced rows only hold
        // columns above their pivot, so one forward sweep suffices.
        for (auto it = row.begin(); it != row.end();) {
            auto p = pivots.find(it->first);
            if (p == pivots.end()) {
                ++it;
                continue;
            }
            const Rational factor = it->second;
            const SparseRow &prow = reduced[p->second];
            const std::size_t col = it->first;
            for (const auto &[c, v] : prow) {
                Rational &slot = row[c];
                slot -= factor * v;
            }
            b -= factor * reduced_rhs[p->second];
            row.erase(col);
            for (auto z = row.begin(); z != row.end();) {
                z = z->second == 0 ? row.erase(z) : std::next(z);
            }
            it = row.upper_bound(col);
        }
        if (row.empty()) {
            if (b != 0) {
                return std::nullopt;
            }
            continue;
        }
        const std::size_t col = row.begin()->first;
        const Rational lead = row.begin()->second;
        for (auto &[c, v] : row) {
            v /= lead;
        }
        b /= lead;
        // Back-substitute the new pivot into earlier rows.
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            auto hit = reduced[k].find(col);
            if (hit == reduced[k].end()) {
                continue;
            }
            const Rational factor = hit->second;
            for (const auto &[c, v] : row) {
                reduced[k][c] -= factor * v;
            }
            reduced_rhs[k] -= factor * b;
            for (auto z = reduced[k].begin(); z != reduced[k].end();) {
                z = z->second == 0 ? reduced[k].erase(z) : std::next(z);
            }
        }
        pivots.emplace(col, reduced.size());
        reduced.push_back(std::move(row));
        reduced_rhs.push_back(b);
    }

    std::vector<Rational> solution(unknowns, Rational(0));
    for (const auto &[col, k] : pivots) {
        solution[col] = reduced_rhs[k];
    }
    return solution;
}

} // namespace jetvar::detail

#endif
