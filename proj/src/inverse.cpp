#include <algorithm>
#include <stdexcept>

#include <jetvar/inverse.hpp>
#include <jetvar/printer.hpp>

#include "linear_solve.hpp"

namespace jetvar
{

namespace
{

void require_variational(const SourceForm &source)
{
    const HelmholtzTensor h = helmholtz(source);
    if (h.is_zero()) {
        return;
    }
    std::vector<precondition_error::component> parts;
    for (const auto &[key, c] : h.components) {
        parts.emplace_back(helmholtz_label(key), to_text(source.spec, c));
    }
    throw precondition_error("source form is not locally variational", std::move(parts));
}

Expr scale_by_fiber_degree(const Expr &f, std::uint32_t shift)
{
    Expr r;
    for (const auto &[m, c] : f.terms()) {
        r.add_term(m, c / Rational(m.fiber_degree() + shift));
    }
    return r;
}

// Grading in Z^n: y^i_p has weight p, x^lambda has weight -e_lambda. Total
// derivatives raise it by e_lambda, so Euler-Lagrange preserves it.
std::vector<long> grading(std::size_t n, const Monomial &m)
{
    std::vector<long> g(n, 0);
    for (const auto &[c, e] : m.factors()) {
        if (c.is_base()) {
            g[c.index()] -= e;
        } else {
            for (std::size_t l = 0; l < n; ++l) {
                g[l] += static_cast<long>(e) * c.multi_index()[l];
            }
        }
    }
    return g;
}

std::vector<std::uint32_t> field_degrees(std::size_t m, const Monomial &mono)
{
    std::vector<std::uint32_t> d(m, 0);
    for (const auto &[c, e] : mono.factors()) {
        if (c.is_field()) {
            d[c.index()] += e;
        }
    }
    return d;
}

using BlockKey = std::pair<std::vector<long>, std::vector<std::uint32_t>>;
using Equation = std::pair<std::size_t, Monomial>; // (component, monomial)

struct EquationOrder {
    bool operator()(const Equation &a, const Equation &b) const
    {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return MonomialOrder{}(a.second, b.second);
    }
};

// All monomials of the given grading and per-field degrees in jets of order <= s.
std::vector<Monomial> block_monomials(const JetSpec &spec, const BlockKey &key, std::uint32_t s)
{
    const auto jets = enumerate_upto(spec.n(), s);
    std::vector<std::vector<Monomial::Factor>> partial{{}};
    for (std::size_t i = 0; i < spec.m(); ++i) {
        // Multisets of size degree[i] drawn from `jets`, as nondecreasing index lists.
        std::vector<std::vector<Monomial::Factor>> next;
        std::vector<std::size_t> pick(key.second[i], 0);
        auto emit = [&] {
            for (const auto &base : partial) {
                auto fs = base;
                for (std::size_t k : pick) {
                    fs.emplace_back(JetCoordinate::field(i, jets[k]), 1);
                }
                next.push_back(std::move(fs));
            }
        };
        if (pick.empty()) {
            emit();
        } else {
            while (true) {
                emit();
                std::size_t pos = pick.size();
                while (pos > 0 && pick[pos - 1] + 1 == jets.size()) {
                    --pos;
                }
                if (pos == 0) {
                    break;
                }
                const std::size_t v = pick[pos - 1] + 1;
                std::fill(pick.begin() + static_cast<std::ptrdiff_t>(pos - 1), pick.end(), v);
            }
        }
        partial = std::move(next);
    }

    std::vector<Monomial> out;
    for (auto &fs : partial) {
        std::vector<long> total(spec.n(), 0);
        for (const auto &f : fs) {
            for (std::size_t l = 0; l < spec.n(); ++l) {
                total[l] += f.first.multi_index()[l];
            }
        }
        bool ok = true;
        for (std::size_t l = 0; l < spec.n(); ++l) {
            const long a = total[l] - key.first[l];
            if (a < 0) {
                ok = false;
                break;
            }
            if (a > 0) {
                fs.emplace_back(JetCoordinate::base(l), static_cast<std::uint32_t>(a));
            }
        }
        if (ok) {
            out.emplace_back(std::move(fs));
        }
    }
    // Prefer unknowns with fewer explicit base factors as pivots.
    std::stable_sort(out.begin(), out.end(), [](const Monomial &a, const Monomial &b) {
        if (a.base_degree() != b.base_degree()) {
            return a.base_degree() < b.base_degree();
        }
        return MonomialOrder{}(b, a);
    });
    return out;
}

Form base_primitive(const JetSpec &spec, const Expr &f)
{
    const std::size_t n = spec.n();
    Form out(static_cast<std::uint32_t>(n - 1));
    for (const auto &[m, c] : f.terms()) {
        const Rational scale = c / Rational(m.degree() + n);
        for (std::size_t l = 0; l < n; ++l) {
            out += Expr(m * Monomial::of(JetCoordinate::base(l)), scale) * volume_minor(spec, l);
        }
    }
    return out;
}

} // namespace

HomotopyResult fiber_homotopy(const JetSpec &spec, const Form &a)
{
    auto contract = [](const Form &f) {
        Form k(f.degree() == 0 ? 0u : f.degree() - 1);
        if (f.degree() == 0) {
            return k;
        }
        for (const auto &[w, c] : f.terms()) {
            const std::uint32_t thetas = contact_degree(w);
            if (thetas == 0) {
                continue;
            }
            const Expr scaled = scale_by_fiber_degree(c, thetas);
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (!w[j].is_theta()) {
                    continue;
                }
                Wedge rest = w;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
                Expr coeff = Expr::field(w[j].index(), w[j].multi_index()) * scaled;
                if (j % 2 == 1) {
                    coeff = -coeff;
                }
                k.add_term(std::move(rest), coeff);
            }
        }
        return k;
    };
    Form k = contract(a);
    Form defect = a - exterior_d(spec, k) - contract(exterior_d(spec, a));
    return {std::move(k), std::move(defect)};
}

Lagrangian volterra_vainberg(const SourceForm &source)
{
    require_variational(source);
    const JetSpec &spec = source.spec;
    Expr density;
    for (std::size_t i = 0; i < spec.m(); ++i) {
        density += Expr::field(i, MultiIndex(spec.n())) * scale_by_fiber_degree(source.components[i], 1);
    }
    return {spec, density};
}

std::optional<Lagrangian> lagrangian_of_order(const SourceForm &source, std::uint32_t order)
{
    const JetSpec &spec = source.spec;
    const std::size_t n = spec.n();
    const std::size_t m = spec.m();

    // Targets grouped by the block a Lagrangian term must come from.
    std::map<BlockKey, std::map<Equation, Rational, EquationOrder>> blocks;
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto &[mono, c] : source.components[i].terms()) {
            auto degrees = field_degrees(m, mono);
            ++degrees[i];
            blocks[{grading(n, mono), degrees}].emplace(std::pair{i, mono}, c);
        }
    }

    Expr density;
    for (const auto &[key, targets] : blocks) {
        const auto unknowns = block_monomials(spec, key, order);
        std::map<Equation, detail::SparseRow, EquationOrder> rows;
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            const SourceForm e = euler_lagrange({spec, Expr(unknowns[k], 1)});
            for (std::size_t i = 0; i < m; ++i) {
                for (const auto &[mono, c] : e.components[i].terms()) {
                    rows[{i, mono}][k] = c;
                }
            }
        }
        std::vector<detail::SparseRow> matrix;
        std::vector<Rational> rhs;
        for (auto &[eq, row] : rows) {
            auto t = targets.find(eq);
            rhs.push_back(t == targets.end() ? Rational(0) : t->second);
            matrix.push_back(std::move(row));
        }
        for (const auto &[eq, c] : targets) {
            if (!rows.contains(eq)) {
                return std::nullopt;
            }
        }
        auto solution = detail::solve(std::move(matrix), std::move(rhs), unknowns.size());
        if (!solution) {
            return std::nullopt;
        }
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            density.add_term(unknowns[k], (*solution)[k]);
        }
    }
    Lagrangian out{spec, density};
    if (euler_lagrange(out) != source) {
        throw std::logic_error("order search produced a Lagrangian with the wrong Euler-Lagrange form");
    }
    return out;
}

Lagrangian minimal_lagrangian(const SourceForm &source, std::optional<std::uint32_t> order_cap)
{
    require_variational(source);
    const JetSpec &spec = source.spec;
    if (source.is_zero()) {
        return {spec, Expr()};
    }
    // Homotopy candidate: horizontal part of K applied to E.
    const Form k = fiber_homotopy(spec, source.to_form()).primitive;
    const Form hk = horizontalize(spec, k);
    Lagrangian candidate{spec, hk.coefficient(volume(spec).terms().begin()->first)};
    if (euler_lagrange(candidate) != source) {
        throw std::logic_error("homotopy candidate does not reproduce the source form");
    }

    const std::uint32_t cap = order_cap.value_or(2 * source.order() + 1);
    for (std::uint32_t s = 0; s < candidate.order() && s <= cap; ++s) {
        if (auto l = lagrangian_of_order(source, s)) {
            return *l;
        }
    }
    return candidate;
}

bool is_variationally_trivial(const Lagrangian &lagrangian)
{
    return euler_lagrange(lagrangian).is_zero();
}

Form trivial_primitive(const Lagrangian &lagrangian)
{
    const JetSpec &spec = lagrangian.spec;
    const SourceForm e = euler_lagrange(lagrangian);
    if (!e.is_zero()) {
        std::vector<precondition_error::component> parts;
        for (std::size_t i = 0; i < e.components.size(); ++i) {
            if (!e.components[i].is_zero()) {
                parts.emplace_back(source_label(i), to_text(spec, e.components[i]));
            }
        }
        throw precondition_error("Lagrangian is not variationally trivial", std::move(parts));
    }
    // d_v(L omega) = -d_h p, and contracting with the Liouville field along the
    // fiber rays gives L - L(x, 0) = d_h K(p).
    const Momentum p = kolar_decompose(spec, d_v(lagrangian.to_form())).momentum;
    Form alpha = fiber_homotopy(spec, p.to_form()).primitive;
    alpha += base_primitive(spec, at_zero_section(lagrangian.density));
    return alpha;
}

} // namespace jetvar
