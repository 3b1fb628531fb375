// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#define DOCTEST_CONFIG_DISABLE

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <jetvar/commands.hpp>
#include <jetvar/inverse.hpp>
#include <jetvar/parser.hpp>

#include "test_support.hpp"

using namespace jetvar;
using testing::Generator;

namespace
{

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string &what)
    {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

JetSpec small_spec(Generator &gen)
{
    return JetSpec(static_cast<std::size_t>(gen.uniform(1, 2)), static_cast<std::size_t>(gen.uniform(1, 2)));
}

// 1. Differential identities on random forms.
Outcome differential_identities()
{
    Outcome r;
    Generator gen(1001);
    for (int trial = 0; trial < 240; ++trial) {
        const JetSpec spec = small_spec(gen);
        const auto degree = static_cast<std::uint32_t>(gen.uniform(0, static_cast<int>(spec.n()) + 1));
        const Form a = gen.form(spec, degree, 2);
        const std::string at = " on trial " + std::to_string(trial);
        r.require(exterior_d(spec, exterior_d(spec, a)).is_zero(), "d^2 != 0" + at);
        r.require(d_h(spec, d_h(spec, a)).is_zero(), "d_h^2 != 0" + at);
        r.require(d_v(d_v(a)).is_zero(), "d_v^2 != 0" + at);
        r.require((d_h(spec, d_v(a)) + d_v(d_h(spec, a))).is_zero(), "d_h d_v + d_v d_h != 0" + at);
        r.require(d_h(spec, a) + d_v(a) == exterior_d(spec, a), "d_h + d_v != d" + at);
    }
    return r;
}

using Coefficients = std::map<std::pair<std::size_t, MultiIndex>, Expr, std::function<bool(const std::pair<std::size_t, MultiIndex> &, const std::pair<std::size_t, MultiIndex> &)>>;

Coefficients make_coefficients()
{
    return Coefficients([](const auto &a, const auto &b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second.entries() < b.second.entries();
    });
}

Form assemble(const JetSpec &spec, const Coefficients &c)
{
    Form a(static_cast<std::uint32_t>(spec.n() + 1));
    for (const auto &[key, value] : c) {
        a += wedge(value * Form::theta(key.first, key.second), volume(spec));
    }
    return a;
}

Coefficients random_coefficients(Generator &gen, const JetSpec &spec, std::uint32_t max_order)
{
    Coefficients c = make_coefficients();
    const auto pool = enumerate_upto(spec.n(), max_order);
    const int terms = gen.uniform(1, 4);
    for (int k = 0; k < terms; ++k) {
        const auto i = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(spec.m()) - 1));
        const auto &p = pool[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(pool.size()) - 1))];
        c[{i, p}] += gen.expr(spec, max_order, 2, 2);
    }
    return c;
}

// 2. Decomposition identity and closed-form source components.
Outcome kolar_decomposition()
{
    Outcome r;
    Generator gen(1002);
    for (int trial = 0; trial < 120; ++trial) {
        const JetSpec spec = small_spec(gen);
        const Coefficients c = random_coefficients(gen, spec, 2);
        const Form alpha = assemble(spec, c);
        const auto k = kolar_decompose(spec, alpha);
        r.require(alpha == k.source.to_form() - d_h(spec, k.momentum.to_form()),
                  "alpha != E - d_h p on trial " + std::to_string(trial));
        std::vector<Expr> expected(spec.m());
        for (const auto &[key, value] : c) {
            Expr term = iterated_total(value, key.second);
            expected[key.first] += key.second.degree() % 2 == 0 ? term : -term;
        }
        r.require(k.source == SourceForm(spec, expected), "E differs from the closed form on trial " + std::to_string(trial));
    }
    return r;
}

// 3. Euler-Lagrange forms of divergences vanish.
Outcome divergences()
{
    Outcome r;
    Generator gen(1003);
    for (int trial = 0; trial < 120; ++trial) {
        const JetSpec spec = small_spec(gen);
        Form q(static_cast<std::uint32_t>(spec.n() - 1));
        for (std::size_t l = 0; l < spec.n(); ++l) {
            q += gen.expr(spec, 2, 3, 3) * volume_minor(spec, l);
        }
        const Form top = horizontalize(spec, d_h(spec, q));
        const Expr density = top.is_zero() ? Expr() : top.coefficient(volume(spec).terms().begin()->first);
        r.require(euler_lagrange({spec, density}).is_zero(), "E(d_h q) != 0 on trial " + std::to_string(trial));
    }
    return r;
}

// 4. Helmholtz soundness plus the hand value for E_1 = u_x.
Outcome helmholtz_soundness()
{
    Outcome r;
    Generator gen(1004);
    for (int trial = 0; trial < 120; ++trial) {
        const JetSpec spec = small_spec(gen);
        const Lagrangian l{spec, gen.expr(spec, 2, 3, 3)};
        r.require(helmholtz(euler_lagrange(l)).is_zero(), "H(E(L)) != 0 on trial " + std::to_string(trial));
    }
    const JetSpec line(1, 1);
    const auto h = helmholtz(SourceForm(line, {Expr::field(0, MultiIndex{1})}));
    const HelmholtzKey key{MultiIndex{1}, 0, 0};
    r.require(h.components.size() == 1 && h.components.count(key) == 1 && h.components.at(key) == Expr(1),
              "H^(1)_11 of E = u_x is not exactly 1");
    return r;
}

// Corpus for criteria 5 and 6: order-one Lagrangians on the line with a
// nondegenerate kinetic term, so the equations are genuinely second order.
std::vector<Lagrangian> order_one_corpus()
{
    Generator gen(1005);
    std::vector<Lagrangian> corpus;
    for (int trial = 0; trial < 60; ++trial) {
        const JetSpec spec(1, static_cast<std::size_t>(gen.uniform(1, 2)));
        const auto i = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(spec.m()) - 1));
        const Expr ux = Expr::field(i, MultiIndex{1});
        corpus.push_back({spec, gen.coefficient() * ux * ux + gen.expr(spec, 1, 3, 3)});
    }
    return corpus;
}

// Independent certificate that no order-0 density produces E: the Euler-Lagrange
// image of every monomial in x, y^i up to a degree bound is computed, and E must
// mention some monomial that no image contains. Sound for any degree bound.
std::string monomial_text(const JetSpec &spec, const Monomial &m)
{
    Expr e;
    e.add_term(m, Rational(1));
    return to_text(spec, e);
}

bool order_zero_excluded(const SourceForm &e, int max_degree)
{
    const JetSpec &spec = e.spec;
    std::vector<Expr> generators{Expr(1)};
    std::vector<Expr> atoms{Expr::base(0)};
    for (std::size_t i = 0; i < spec.m(); ++i) {
        atoms.push_back(Expr::field(i, MultiIndex{0}));
    }
    std::vector<Expr> frontier{Expr(1)};
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<Expr> next;
        for (const auto &g : frontier) {
            for (const auto &a : atoms) {
                next.push_back(g * a);
            }
        }
        generators.insert(generators.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::vector<std::set<std::string>> reachable(spec.m());
    for (const auto &g : generators) {
        const SourceForm image = euler_lagrange({spec, g});
        for (std::size_t i = 0; i < spec.m(); ++i) {
            for (const auto &[m, c] : image.components[i].terms()) {
                reachable[i].insert(monomial_text(spec, m));
            }
        }
    }
    for (std::size_t i = 0; i < spec.m(); ++i) {
        for (const auto &[m, c] : e.components[i].terms()) {
            if (reachable[i].count(monomial_text(spec, m)) == 0) {
                return true;
            }
        }
    }
    return false;
}

// 5. Inverse round trip and minimality.
Outcome inverse_round_trip()
{
    Outcome r;
    int index = 0;
    for (const auto &l : order_one_corpus()) {
        const std::string at = " on trial " + std::to_string(index++);
        const SourceForm e = euler_lagrange(l);
        r.require(is_locally_variational(e), "E(L) not locally variational" + at);
        const Lagrangian minimal = minimal_lagrangian(e);
        r.require(euler_lagrange(minimal) == e, "E(L') != E" + at);
        r.require(minimal.order() == 1, "minimal order is not 1" + at);
        if (e.order() == 2) {
            r.require(!lagrangian_of_order(e, 0).has_value(), "order search found an order-0 Lagrangian" + at);
            r.require(order_zero_excluded(e, 4), "dense ansatz did not exclude order 0" + at);
        }
    }
    return r;
}

// 6. Volterra-Vainberg oracle on the same corpus.
Outcome volterra_vainberg_oracle()
{
    Outcome r;
    int index = 0;
    for (const auto &l : order_one_corpus()) {
        const std::string at = " on trial " + std::to_string(index++);
        const SourceForm e = euler_lagrange(l);
        const Lagrangian vv = volterra_vainberg(e);
        r.require(euler_lagrange(vv) == e, "E(VV(E)) != E" + at);
        r.require(vv.order() == e.order(), "order(VV) != order(E)" + at);
        const Lagrangian minimal = minimal_lagrangian(e);
        if (minimal.order() < e.order()) {
            r.require(vv.order() > minimal.order(), "VV not above the minimal order" + at);
        }
    }
    return r;
}

// 7. Numeric first variation for L = u_x^2 / 2 on [-1, 1].
Outcome numeric_first_variation_oracle()
{
    Outcome r;
    Generator gen(1007);
    const JetSpec line(1, 1);
    const Expr x = Expr::base(0);
    const Expr ux = Expr::field(0, MultiIndex{1});
    const Lagrangian l{line, Rational(1, 2) * ux * ux};
    auto polynomial = [&](int degree) {
        Expr p;
        for (int k = 0; k <= degree; ++k) {
            p += Expr(gen.coefficient()) * pow(x, static_cast<std::uint32_t>(k));
        }
        return p;
    };
    for (int trial = 0; trial < 5; ++trial) {
        const Expr section = polynomial(gen.uniform(2, 5));
        const Expr bump = pow(Expr(1) - x * x, static_cast<std::uint32_t>(gen.uniform(1, 2)));
        const Expr variation = polynomial(gen.uniform(0, 3)) * bump;
        const auto v = numeric_first_variation(l, {section}, {variation}, Box{{{-1.0, 1.0}}}, 200);
        const double scale = std::max(std::abs(v.euler_lagrange_pairing), 1e-12);
        const double rel = std::abs(v.delta_action - v.euler_lagrange_pairing) / scale;
        std::ostringstream msg;
        msg << "relative error " << rel << " on trial " << trial;
        r.require(rel <= 1e-6, msg.str());
    }
    return r;
}

// 8. Trivial Lagrangians d_h f and their primitives.
Outcome trivial_round_trip()
{
    Outcome r;
    Generator gen(1008);
    for (int trial = 0; trial < 60; ++trial) {
        const JetSpec spec(1, static_cast<std::size_t>(gen.uniform(1, 2)));
        const Expr f = gen.expr(spec, 2, 3, 3);
        const Form top = d_h(spec, Form(f));
        const Lagrangian l{spec, top.is_zero() ? Expr() : top.coefficient(volume(spec).terms().begin()->first)};
        const std::string at = " on trial " + std::to_string(trial);
        r.require(is_variationally_trivial(l), "d_h f not flagged trivial" + at);
        const Form g = trivial_primitive(l);
        r.require(horizontalize(spec, d_h(spec, g)) == l.to_form(), "d_h g != L" + at);
    }
    return r;
}

// 9. Quasisymmetric momentum against the second-order formula.
Outcome quasisymmetric_momentum()
{
    Outcome r;
    Generator gen(1009);
    for (int trial = 0; trial < 20; ++trial) {
        const JetSpec spec(2, static_cast<std::size_t>(gen.uniform(1, 2)));
        const std::size_t n = spec.n();
        Coefficients c = random_coefficients(gen, spec, 2);
        // Ensure at least one genuinely second-order coefficient.
        c[{0, MultiIndex{1, 1}}] += gen.expr(spec, 2, 2, 2);
        const Form alpha = assemble(spec, c);
        auto coef = [&](std::size_t i, const MultiIndex &p) {
            auto it = c.find({i, p});
            return it == c.end() ? Expr() : it->second;
        };
        Form expected(static_cast<std::uint32_t>(n));
        for (std::size_t i = 0; i < spec.m(); ++i) {
            for (std::size_t lambda = 0; lambda < n; ++lambda) {
                const MultiIndex el = MultiIndex::unit(n, lambda);
                Expr first = coef(i, el);
                for (std::size_t mu = 0; mu < n; ++mu) {
                    const MultiIndex em = MultiIndex::unit(n, mu);
                    const Rational weight = lambda == mu ? Rational(1) : Rational(1, 2);
                    const Expr second = weight * coef(i, el + em);
                    first -= total_derivative(second, mu);
                    expected += wedge(second * Form::theta(i, em), volume_minor(spec, lambda));
                }
                expected += wedge(first * Form::theta(i, MultiIndex(n)), volume_minor(spec, lambda));
            }
        }
        const Momentum p = momentum_quasisymmetric_r2(spec, alpha);
        const std::string at = " on trial " + std::to_string(trial);
        r.require(p.to_form() == expected, "momentum differs from the formula" + at);
        r.require(quasisymmetry_map(p).is_zero(), "s-map does not vanish" + at);
        r.require(alpha == kolar_decompose(spec, alpha, Gauge::quasisymmetric_r2).source.to_form() - d_h(spec, p.to_form()), "alpha != E - d_h p" + at);
    }
    return r;
}

// 10. CLI conformance.
Outcome cli_conformance()
{
    Outcome r;
    struct Example {
        const char *command;
        const char *problem;
        const char *json;
    };
    const Example examples[] = {
        {"el", "base x\nfields u\nL = 1/2*u_{x}^2\n", "{\"source_form\":{\"E\":[{\"i\":1,\"expr\":\"-u_{x,x}\"}]}}\n"},
        {"helmholtz", "base x\nfields u\nE_1 = u_{x}\n",
         "{\"helmholtz\":{\"components\":[{\"p\":[1],\"i\":1,\"j\":1,\"expr\":\"1\"}],\"variational\":false}}\n"},
        {"inverse", "base x\nfields u\nE_1 = -(u_{x,x}+u)\n",
         "{\"lagrangian\":{\"density\":\"1/2*u_{x}^2 - 1/2*u^2\",\"order\":1,\"volterra_vainberg_order\":2}}\n"},
    };
    RunOptions options;
    options.format = Format::json;
    for (const auto &ex : examples) {
        for (int repeat = 0; repeat < 2; ++repeat) {
            std::ostringstream out, err;
            const int status = run_command(ex.command, options, ex.problem, out, err);
            r.require(status == exit_code::ok && out.str() == ex.json, std::string("unexpected output for ") + ex.command);
        }
    }
    Generator gen(1010);
    for (int trial = 0; trial < 500; ++trial) {
        const JetSpec spec(static_cast<std::size_t>(gen.uniform(1, 3)), static_cast<std::size_t>(gen.uniform(1, 2)));
        const Expr e = gen.expr(spec, 3, 4, 3);
        const std::string text = to_text(spec, e);
        r.require(parse_expr(spec, text) == e, "round trip failed for " + text);
    }
    return r;
}

} // namespace

int main()
{
    struct Criterion {
        const char *name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"differential identities", differential_identities},
        {"first-variation decomposition", kolar_decomposition},
        {"divergences have zero Euler-Lagrange form", divergences},
        {"Helmholtz soundness", helmholtz_soundness},
        {"inverse round trip and minimality", inverse_round_trip},
        {"Volterra-Vainberg oracle", volterra_vainberg_oracle},
        {"numeric first variation", numeric_first_variation_oracle},
        {"trivial Lagrangian round trip", trivial_round_trip},
        {"quasisymmetric momentum", quasisymmetric_momentum},
        {"CLI conformance", cli_conformance},
    };
    int failures = 0;
    int index = 1;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << index++ << ". " << c.name << " (" << elapsed.count() << " s)";
        if (!o.ok) {
            std::cout << ": " << o.detail;
            ++failures;
        }
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}
