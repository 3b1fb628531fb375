#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include <jetvar/commands.hpp>
#include <jetvar/inverse.hpp>
#include <jetvar/parser.hpp>
#include <jetvar/printer.hpp>

namespace jetvar
{

namespace
{

using json = nlohmann::ordered_json;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json multi_index_json(const MultiIndex &p)
{
    json a = json::array();
    for (auto v : p.entries()) {
        a.push_back(v);
    }
    return a;
}

json source_components(const SourceForm &e)
{
    json list = json::array();
    for (std::size_t i = 0; i < e.components.size(); ++i) {
        list.push_back({{"i", i + 1}, {"expr", to_text(e.spec, e.components[i])}});
    }
    return list;
}

std::string source_text(const SourceForm &e)
{
    std::string out;
    for (std::size_t i = 0; i < e.components.size(); ++i) {
        out += source_label(i) + " = " + to_text(e.spec, e.components[i]) + "\n";
    }
    return out;
}

std::string source_latex(const SourceForm &e)
{
    std::vector<std::pair<Expr, std::string>> terms;
    for (std::size_t i = 0; i < e.components.size(); ++i) {
        terms.emplace_back(e.components[i], "\\vartheta^{" + std::to_string(i + 1) + "}\\wedge\\omega");
    }
    return latex_sum(e.spec, terms);
}

std::string dump(const json &j)
{
    return j.dump() + "\n";
}

std::string latex_density(const JetSpec &spec, const Expr &density)
{
    return latex_sum(spec, {{density, "\\omega"}});
}

} // namespace

Format parse_format(std::string_view name)
{
    if (name == "text") {
        return Format::text;
    }
    if (name == "json") {
        return Format::json;
    }
    if (name == "latex") {
        return Format::latex;
    }
    throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

bool CheckReport::passed() const
{
    return std::all_of(results.begin(), results.end(), [](const auto &r) { return r.second; });
}

std::string serialize(const SourceForm &e, Format format)
{
    switch (format) {
    case Format::json:
        return dump({{"source_form", {{"E", source_components(e)}}}});
    case Format::latex:
        return source_latex(e) + "\n";
    case Format::text:
        break;
    }
    return source_text(e);
}

std::string serialize(const HelmholtzTensor &h, Format format)
{
    switch (format) {
    case Format::json: {
        json list = json::array();
        for (const auto &[key, c] : h.components) {
            list.push_back({{"p", multi_index_json(key.p)},
                            {"i", key.i + 1},
                            {"j", key.j + 1},
                            {"expr", to_text(h.spec, c)}});
        }
        return dump({{"helmholtz", {{"components", list}, {"variational", h.is_zero()}}}});
    }
    case Format::latex: {
        if (h.is_zero()) {
            return "\\text{variational}\n";
        }
        std::string out = "\\text{non-variational}";
        for (const auto &[key, c] : h.components) {
            out += ";\\; " + helmholtz_label(key) + " = " + to_latex(h.spec, c);
        }
        return out + "\n";
    }
    case Format::text:
        break;
    }
    if (h.is_zero()) {
        return "variational\n";
    }
    std::string out = "non-variational";
    for (const auto &[key, c] : h.components) {
        out += "; " + helmholtz_label(key) + " = " + to_text(h.spec, c);
    }
    return out + "\n";
}

std::string serialize(const InverseReport &r, Format format)
{
    const JetSpec &spec = r.lagrangian.spec;
    switch (format) {
    case Format::json:
        return dump({{"lagrangian",
                      {{"density", to_text(spec, r.lagrangian.density)},
                       {"order", r.lagrangian.order()},
                       {"volterra_vainberg_order", r.volterra_vainberg_order}}}});
    case Format::latex:
        return "L = " + latex_density(spec, r.lagrangian.density) + "\n";
    case Format::text:
        break;
    }
    return "L = " + to_text(spec, r.lagrangian.density) + "\norder = " + std::to_string(r.lagrangian.order())
           + "\nvolterra_vainberg_order = " + std::to_string(r.volterra_vainberg_order) + "\n";
}

std::string serialize(const MomentumReport &r, Format format)
{
    const JetSpec &spec = r.source.spec;
    const Form p = r.momentum.to_form();
    switch (format) {
    case Format::json: {
        json terms = json::array();
        for (const auto &[key, c] : r.momentum.coefficients) {
            terms.push_back({{"i", key.i + 1},
                             {"q", multi_index_json(key.q)},
                             {"lambda", key.lambda + 1},
                             {"expr", to_text(spec, c)}});
        }
        return dump({{"momentum",
                      {{"gauge", std::string(gauge_name(r.gauge))},
                       {"E", source_components(r.source)},
                       {"terms", terms},
                       {"form", to_text(spec, p)}}}});
    }
    case Format::latex:
        return "E = " + source_latex(r.source) + "\np = " + to_latex(spec, p) + "\n";
    case Format::text:
        break;
    }
    return source_text(r.source) + "p = " + to_text(spec, p) + "\n";
}

std::string serialize(const PrimitiveReport &r, Format format)
{
    const JetSpec &spec = r.source.spec;
    switch (format) {
    case Format::json: {
        json body = {{"trivial", r.trivial}};
        if (r.trivial) {
            body["degree"] = r.primitive.degree();
            body["form"] = to_text(spec, r.primitive);
        } else {
            body["E"] = source_components(r.source);
        }
        return dump({{"primitive", body}});
    }
    case Format::latex:
        if (r.trivial) {
            return "\\alpha = " + to_latex(spec, r.primitive) + "\n";
        }
        return "\\text{non-trivial};\\; E = " + source_latex(r.source) + "\n";
    case Format::text:
        break;
    }
    if (r.trivial) {
        return "trivial\nalpha = " + to_text(spec, r.primitive) + "\n";
    }
    std::string out = "non-trivial";
    for (std::size_t i = 0; i < r.source.components.size(); ++i) {
        if (!r.source.components[i].is_zero()) {
            out += "; " + source_label(i) + " = " + to_text(spec, r.source.components[i]);
        }
    }
    return out + "\n";
}

std::string serialize(const CheckReport &r, Format format)
{
    if (format == Format::json) {
        json list = json::array();
        for (const auto &[name, ok] : r.results) {
            list.push_back({{"name", name}, {"ok", ok}});
        }
        return dump({{"check", {{"results", list}, {"passed", r.passed()}}}});
    }
    std::string out;
    for (const auto &[name, ok] : r.results) {
        out += (ok ? "ok   " : "FAIL ") + name + "\n";
    }
    return out;
}

namespace
{

CheckReport run_checks(const ProblemFile &problem, const RunOptions &options)
{
    const JetSpec &spec = problem.spec;
    CheckReport report;
    auto add = [&](std::string name, bool ok) { report.results.emplace_back(std::move(name), ok); };

    auto check_source = [&](const std::string &prefix, const SourceForm &e) {
        add(prefix + "helmholtz(E) agrees with the second variation of d_v E",
            second_variation(spec, d_v(e.to_form())).tensor.components == helmholtz(e).components);
        if (!is_locally_variational(e)) {
            return;
        }
        const Lagrangian vv = volterra_vainberg(e);
        add(prefix + "EL(volterra_vainberg(E)) = E", euler_lagrange(vv) == e);
        const Lagrangian minimal = minimal_lagrangian(e, options.order_cap);
        add(prefix + "EL(minimal_lagrangian(E)) = E", euler_lagrange(minimal) == e);
        add(prefix + "order(minimal) <= order(volterra_vainberg)", minimal.order() <= vv.order());
    };

    auto check_decomposition = [&](const std::string &prefix, const Form &alpha) {
        const auto lex = kolar_decompose(spec, alpha, Gauge::lex_peel);
        add(prefix + "alpha = E - d_h p (lex)", alpha == lex.source.to_form() - d_h(spec, lex.momentum.to_form()));
        for (Gauge g : {Gauge::natural_r1, Gauge::quasisymmetric_r2}) {
            try {
                const auto k = kolar_decompose(spec, alpha, g);
                const std::string name(gauge_name(g));
                add(prefix + "alpha = E - d_h p (" + name + ")",
                    alpha == k.source.to_form() - d_h(spec, k.momentum.to_form()));
                add(prefix + "E independent of gauge (" + name + ")", k.source == lex.source);
                if (g == Gauge::quasisymmetric_r2) {
                    add(prefix + "quasisymmetric momentum has vanishing s-map", quasisymmetry_map(k.momentum).is_zero());
                }
            } catch (const shape_error &) {
                // gauge not applicable at this order
            }
        }
    };

    auto check_differentials = [&](const std::string &prefix, const Form &a) {
        add(prefix + "d d a = 0", exterior_d(spec, exterior_d(spec, a)).is_zero());
        add(prefix + "d_h d_h a = 0", d_h(spec, d_h(spec, a)).is_zero());
        add(prefix + "d_v d_v a = 0", d_v(d_v(a)).is_zero());
        add(prefix + "d_h d_v a + d_v d_h a = 0", (d_h(spec, d_v(a)) + d_v(d_h(spec, a))).is_zero());
        add(prefix + "d_h a + d_v a = d a", d_h(spec, a) + d_v(a) == exterior_d(spec, a));
    };

    if (problem.lagrangian) {
        const Lagrangian &l = *problem.lagrangian;
        check_differentials("L: ", l.to_form());
        const SourceForm e = euler_lagrange(l);
        add("L: helmholtz(EL(L)) = 0", helmholtz(e).is_zero());
        check_decomposition("L: ", d_v(l.to_form()));
        check_source("L: ", e);
        if (is_variationally_trivial(l)) {
            const Form alpha = trivial_primitive(l);
            add("L: h(d_h primitive) = L omega", horizontalize(spec, d_h(spec, alpha)) == l.to_form());
        }
    }
    if (problem.source) {
        check_differentials("E: ", problem.source->to_form());
        check_source("E: ", *problem.source);
    }
    if (problem.alpha) {
        const Form &a = *problem.alpha;
        check_differentials("alpha: ", a);
        if (a.degree() >= 1) {
            add("alpha: homotopy defect is the zero-section restriction", [&] {
                Form expected(a.degree());
                for (const auto &[w, c] : a.terms()) {
                    if (contact_degree(w) == 0) {
                        expected.add_term(w, at_zero_section(c));
                    }
                }
                return fiber_homotopy(spec, a).defect == expected;
            }());
        }
        if (a.degree() == spec.n() + 1) {
            try {
                top_contact_coefficients(spec, a);
                check_decomposition("alpha: ", a);
            } catch (const shape_error &) {
                // not a 1-contact top form
            }
        }
    }
    if (report.results.empty()) {
        throw usage_error("nothing to check: the problem file has no L, E or alpha");
    }
    return report;
}

std::string execute(std::string_view command, const RunOptions &options, const ProblemFile &problem, int &status)
{
    const JetSpec &spec = problem.spec;
    auto need_lagrangian = [&]() -> const Lagrangian & {
        if (!problem.lagrangian) {
            throw usage_error("command '" + std::string(command) + "' needs a Lagrangian 'L = ...'");
        }
        return *problem.lagrangian;
    };
    auto need_source = [&]() -> const SourceForm & {
        if (!problem.source) {
            throw usage_error("command '" + std::string(command) + "' needs a source form 'E_1 = ...'");
        }
        return *problem.source;
    };

    if (command == "el") {
        return serialize(euler_lagrange(need_lagrangian()), options.format);
    }
    if (command == "helmholtz") {
        const SourceForm e = problem.source ? *problem.source : euler_lagrange(need_lagrangian());
        return serialize(helmholtz(e), options.format);
    }
    if (command == "momentum") {
        const Form alpha = problem.alpha ? *problem.alpha : d_v(need_lagrangian().to_form());
        auto k = kolar_decompose(spec, alpha, options.gauge);
        return serialize(MomentumReport{std::move(k.source), std::move(k.momentum), options.gauge}, options.format);
    }
    if (command == "inverse") {
        const SourceForm &e = need_source();
        Lagrangian l = minimal_lagrangian(e, options.order_cap);
        const std::uint32_t vv = volterra_vainberg(e).order();
        return serialize(InverseReport{std::move(l), vv}, options.format);
    }
    if (command == "trivial") {
        const Lagrangian &l = need_lagrangian();
        const SourceForm e = euler_lagrange(l);
        if (!e.is_zero()) {
            return serialize(PrimitiveReport{false, e, Form(static_cast<std::uint32_t>(spec.n() - 1))}, options.format);
        }
        return serialize(PrimitiveReport{true, e, trivial_primitive(l)}, options.format);
    }
    if (command == "check") {
        CheckReport report = run_checks(problem, options);
        if (!report.passed()) {
            status = exit_code::invariant;
        }
        return serialize(report, options.format);
    }
    throw usage_error("unknown command '" + std::string(command) + "'");
}

} // namespace

int run_command(std::string_view command, const RunOptions &options, std::string_view problem_text, std::ostream &out,
                std::ostream &err)
{
    try {
        const ProblemFile problem = parse_problem(problem_text);
        int status = exit_code::ok;
        out << execute(command, options, problem, status);
        return status;
    } catch (const parse_error &e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const precondition_error &e) {
        err << "precondition failed: " << e.what() << "\n";
        for (const auto &[label, value] : e.components()) {
            err << "  " << label << " = " << value << "\n";
        }
        return exit_code::precondition;
    } catch (const usage_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::invalid_argument &e) {
        err << "precondition failed: " << e.what() << "\n";
        return exit_code::precondition;
    } catch (const std::out_of_range &e) {
        err << "precondition failed: " << e.what() << "\n";
        return exit_code::precondition;
    } catch (const std::logic_error &e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return exit_code::invariant;
    }
}

} // namespace jetvar
