#ifndef JETVAR_TEST_SUPPORT_HPP
#define JETVAR_TEST_SUPPORT_HPP

// Random generators and small helpers shared by the unit and acceptance suites.

#include <cstdint>
#include <random>
#include <vector>

#include <jetvar/expr.hpp>
#include <jetvar/forms.hpp>
#include <jetvar/printer.hpp>

#include <doctest.h>

namespace jetvar::testing
{

class Generator
{
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937_64 &engine() { return rng_; }

    Rational coefficient()
    {
        int num = 0;
        while (num == 0) {
            num = uniform(-5, 5);
        }
        return Rational(num, uniform(1, 3));
    }

    JetCoordinate coordinate(const JetSpec &spec, std::uint32_t max_order, double base_weight = 0.2)
    {
        if (coin(base_weight)) {
            return JetCoordinate::base(static_cast<std::size_t>(uniform(0, static_cast<int>(spec.n()) - 1)));
        }
        const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(spec.m()) - 1));
        auto pool = enumerate_upto(spec.n(), max_order);
        return JetCoordinate::field(i, pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))]);
    }

    Monomial monomial(const JetSpec &spec, std::uint32_t max_order, int max_degree, double base_weight = 0.2)
    {
        std::vector<Monomial::Factor> fs;
        const int d = uniform(0, max_degree);
        for (int k = 0; k < d; ++k) {
            fs.emplace_back(coordinate(spec, max_order, base_weight), 1);
        }
        return Monomial(std::move(fs));
    }

    Expr expr(const JetSpec &spec, std::uint32_t max_order, int max_terms = 3, int max_degree = 3,
              double base_weight = 0.2)
    {
        Expr e;
        const int t = uniform(1, max_terms);
        for (int k = 0; k < t; ++k) {
            e.add_term(monomial(spec, max_order, max_degree, base_weight), coefficient());
        }
        return e;
    }

    BasisCovector covector(const JetSpec &spec, std::uint32_t max_order)
    {
        if (coin(0.4)) {
            return BasisCovector::dx(static_cast<std::size_t>(uniform(0, static_cast<int>(spec.n()) - 1)));
        }
        const auto c = coordinate(spec, max_order, 0.0);
        return BasisCovector::theta(c.index(), c.multi_index());
    }

    // Random homogeneous form of the given degree in the adapted basis.
    Form form(const JetSpec &spec, std::uint32_t degree, std::uint32_t max_order, int max_terms = 3)
    {
        Form f(degree);
        const int t = uniform(1, max_terms);
        for (int k = 0; k < t; ++k) {
            Wedge w;
            for (std::uint32_t j = 0; j < degree; ++j) {
                w.push_back(covector(spec, max_order));
            }
            f.add_term(std::move(w), expr(spec, max_order, 2, 2));
        }
        return f;
    }

    // 1-contact horizontal-degree-n form sum alpha_i^p theta^i_p ^ omega.
    Form one_contact_top(const JetSpec &spec, std::uint32_t max_order, int max_terms = 3)
    {
        Form a(static_cast<std::uint32_t>(spec.n() + 1));
        const int t = uniform(1, max_terms);
        auto pool = enumerate_upto(spec.n(), max_order);
        for (int k = 0; k < t; ++k) {
            const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(spec.m()) - 1));
            const auto &p = pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
            a += wedge(expr(spec, max_order, 2, 2) * Form::theta(i, p), volume(spec));
        }
        return a;
    }

private:
    std::mt19937_64 rng_;
};

// Value of the prolonged section j s at a point: y^i_p -> d_p s^i(x).
// The section is given by polynomials in the base coordinates.
inline Expr section_derivative(const Expr &component, const MultiIndex &p)
{
    Expr r = component;
    for (std::size_t l = 0; l < p.size(); ++l) {
        for (std::uint32_t k = 0; k < p[l]; ++k) {
            r = partial(r, JetCoordinate::base(l));
        }
    }
    return r;
}

// Pulls an expression back along a prolonged polynomial section, giving a polynomial in x.
inline Expr pull_back_along(const Expr &f, const std::vector<Expr> &section)
{
    Expr r;
    for (const auto &[m, c] : f.terms()) {
        Expr term(c);
        for (const auto &[coord, e] : m.factors()) {
            Expr v = coord.is_base() ? Expr(coord) : section_derivative(section[coord.index()], coord.multi_index());
            term *= pow(v, e);
        }
        r += term;
    }
    return r;
}

// Smallest chart containing every coordinate of e, for diagnostics.
inline JetSpec chart_of(const Expr &e, std::size_t min_n = 1)
{
    std::size_t n = min_n, m = 1;
    for (const auto &c : e.coordinates()) {
        if (c.is_base()) {
            n = std::max(n, c.index() + 1);
        } else {
            n = std::max(n, c.multi_index().size());
            m = std::max(m, c.index() + 1);
        }
    }
    return JetSpec(n, m);
}

} // namespace jetvar::testing

namespace doctest
{
template <> struct StringMaker<jetvar::Expr> {
    static String convert(const jetvar::Expr &e)
    {
        return jetvar::to_text(jetvar::testing::chart_of(e), e).c_str();
    }
};
template <> struct StringMaker<jetvar::Form> {
    static String convert(const jetvar::Form &f)
    {
        jetvar::Expr probe;
        std::size_t n = 1, m = 1;
        for (const auto &[w, c] : f.terms()) {
            auto spec = jetvar::testing::chart_of(c);
            n = std::max(n, spec.n());
            m = std::max(m, spec.m());
            for (const auto &b : w) {
                if (b.is_dx()) {
                    n = std::max(n, b.index() + 1);
                } else {
                    n = std::max(n, b.multi_index().size());
                    m = std::max(m, b.index() + 1);
                }
            }
        }
        return jetvar::to_text(jetvar::JetSpec(n, m), f).c_str();
    }
};
} // namespace doctest

#endif
