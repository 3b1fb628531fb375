#include <array>
#include <cmath>
#include <string>

#include <jetvar/varcalc.hpp>

namespace jetvar
{

namespace
{

// 5-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> gl_nodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                         0.9061798459386640};
constexpr std::array<double, 5> gl_weights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

Expr base_derivative(const Expr &f, const MultiIndex &p)
{
    Expr r = f;
    for (std::size_t l = 0; l < p.size(); ++l) {
        for (std::uint32_t k = 0; k < p[l]; ++k) {
            r = partial(r, JetCoordinate::base(l));
        }
    }
    return r;
}

// Derivative polynomials of a map X -> Y for every field coordinate in `coords`.
std::map<JetCoordinate, Expr> prolong(const std::vector<Expr> &map, const std::set<JetCoordinate> &coords)
{
    std::map<JetCoordinate, Expr> out;
    for (const auto &c : coords) {
        if (c.is_field()) {
            out.emplace(c, base_derivative(map.at(c.index()), c.multi_index()));
        }
    }
    return out;
}

double at_point(const Expr &f, const std::vector<double> &x)
{
    return eval_double(f, [&](const JetCoordinate &c) { return x.at(c.index()); });
}

} // namespace

FirstVariation numeric_first_variation(const Lagrangian &lagrangian, const std::vector<Expr> &section,
                                       const std::vector<Expr> &variation, const Box &box, std::size_t grid)
{
    const JetSpec &spec = lagrangian.spec;
    const std::size_t n = spec.n();
    if (box.intervals.size() != n) {
        throw domain_error("box needs one interval per base direction");
    }
    for (const auto &[a, b] : box.intervals) {
        if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
            throw domain_error("degenerate box interval");
        }
    }
    if (grid == 0) {
        throw domain_error("grid resolution must be positive");
    }
    if (section.size() != spec.m() || variation.size() != spec.m()) {
        throw dimension_error("section and variation need one component per fiber coordinate");
    }
    for (const auto &component : section) {
        for (const auto &c : component.coordinates()) {
            if (c.is_field() || c.index() >= n) {
                throw dimension_error("section components must be polynomials in the base coordinates");
            }
        }
    }

    const SourceForm source = euler_lagrange(lagrangian);
    std::set<JetCoordinate> coords = lagrangian.density.coordinates();
    for (const auto &e : source.components) {
        const auto more = e.coordinates();
        coords.insert(more.begin(), more.end());
    }
    for (std::size_t i = 0; i < spec.m(); ++i) {
        coords.insert(JetCoordinate::field(i, MultiIndex(n)));
    }
    const auto s_jet = prolong(section, coords);
    const auto eta_jet = prolong(variation, coords);

    // Boundary terms of the integration by parts involve eta and its derivatives
    // below order(L); they have to vanish at the endpoints.
    if (n == 1 && lagrangian.order() > 0) {
        for (std::size_t i = 0; i < spec.m(); ++i) {
            for (std::uint32_t k = 0; k < lagrangian.order(); ++k) {
                const Expr d = base_derivative(variation[i], MultiIndex{k});
                for (double end : {box.intervals[0].first, box.intervals[0].second}) {
                    if (std::abs(at_point(d, {end})) > 1e-12) {
                        throw precondition_error("variation does not vanish on the boundary collar", {});
                    }
                }
            }
        }
    }

    const double h = 1e-3;
    const std::array<double, 4> eps{h, -h, 2 * h, -2 * h};

    // Tensor-product quadrature: grid cells per axis, 5 nodes per cell.
    const std::size_t per_axis = grid * gl_nodes.size();
    std::size_t total = 1;
    for (std::size_t l = 0; l < n; ++l) {
        total *= per_axis;
    }

    std::array<double, 4> action{};
    double pairing = 0.0;
    std::vector<double> x(n);
    std::map<JetCoordinate, double> s_val, eta_val;
    for (std::size_t flat = 0; flat < total; ++flat) {
        double weight = 1.0;
        std::size_t rest = flat;
        for (std::size_t l = 0; l < n; ++l) {
            const std::size_t k = rest % per_axis;
            rest /= per_axis;
            const std::size_t cell = k / gl_nodes.size();
            const std::size_t node = k % gl_nodes.size();
            const auto [a, b] = box.intervals[l];
            const double width = (b - a) / static_cast<double>(grid);
            x[l] = a + width * (static_cast<double>(cell) + 0.5 * (gl_nodes[node] + 1.0));
            weight *= 0.5 * width * gl_weights[node];
        }
        for (const auto &[c, f] : s_jet) {
            s_val[c] = at_point(f, x);
        }
        for (const auto &[c, f] : eta_jet) {
            eta_val[c] = at_point(f, x);
        }
        for (std::size_t k = 0; k < eps.size(); ++k) {
            const double e = eps[k];
            action[k] += weight * eval_double(lagrangian.density, [&](const JetCoordinate &c) {
                             return c.is_base() ? x[c.index()] : s_val.at(c) + e * eta_val.at(c);
                         });
        }
        double contraction = 0.0;
        for (std::size_t i = 0; i < spec.m(); ++i) {
            const double ei = eval_double(source.components[i], [&](const JetCoordinate &c) {
                return c.is_base() ? x[c.index()] : s_val.at(c);
            });
            contraction += ei * eta_val.at(JetCoordinate::field(i, MultiIndex(n)));
        }
        pairing += weight * contraction;
    }

    const double delta = (8.0 * (action[0] - action[1]) - (action[2] - action[3])) / (12.0 * h);
    return {delta, pairing};
}

} // namespace jetvar
