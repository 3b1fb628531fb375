#include <sstream>

#include <jetvar/printer.hpp>

namespace jetvar
{

namespace
{

std::string subscript_names(const JetSpec &spec, const MultiIndex &p, const char *sep)
{
    std::string out;
    for (std::size_t l = 0; l < p.size(); ++l) {
        for (std::uint32_t k = 0; k < p[l]; ++k) {
            if (!out.empty()) {
                out += sep;
            }
            out += spec.base_names().at(l);
        }
    }
    return out;
}

std::string rational_text(const Rational &q)
{
    return q.get_str();
}

std::string rational_latex(const Rational &q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string monomial_text(const JetSpec &spec, const Monomial &m)
{
    std::string out;
    for (const auto &[c, e] : m.factors()) {
        if (!out.empty()) {
            out += "*";
        }
        out += to_text(spec, c);
        if (e != 1) {
            out += "^" + std::to_string(e);
        }
    }
    return out;
}

std::string monomial_latex(const JetSpec &spec, const Monomial &m)
{
    std::string out;
    for (const auto &[c, e] : m.factors()) {
        if (!out.empty()) {
            out += " ";
        }
        out += to_latex(spec, c);
        if (e != 1) {
            out += "^{" + std::to_string(e) + "}";
        }
    }
    return out;
}

template <class MonoFn, class CoeffFn>
std::string signed_sum(const Expr &e, MonoFn mono, CoeffFn coeff, const char *times)
{
    if (e.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[m, c] : e.terms()) {
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += coeff(mag);
        } else if (mag == 1) {
            out += mono(m);
        } else {
            out += coeff(mag) + times + mono(m);
        }
    }
    return out;
}

} // namespace

std::string to_text(const MultiIndex &p)
{
    std::string out = "(";
    for (std::size_t l = 0; l < p.size(); ++l) {
        out += (l ? "," : "") + std::to_string(p[l]);
    }
    return out + ")";
}

std::string source_label(std::size_t i)
{
    return "E_" + std::to_string(i + 1);
}

std::string helmholtz_label(const HelmholtzKey &key)
{
    const std::string i = std::to_string(key.i + 1);
    const std::string j = std::to_string(key.j + 1);
    const std::string sep = (key.i >= 9 || key.j >= 9) ? "," : "";
    return "H^{" + to_text(key.p) + "}_{" + i + sep + j + "}";
}

std::string to_text(const JetSpec &spec, const JetCoordinate &c)
{
    if (c.is_base()) {
        return spec.base_names().at(c.index());
    }
    const auto &name = spec.field_names().at(c.index());
    if (c.multi_index().is_zero()) {
        return name;
    }
    return name + "_{" + subscript_names(spec, c.multi_index(), ",") + "}";
}

std::string to_text(const JetSpec &spec, const Expr &e)
{
    return signed_sum(
        e, [&](const Monomial &m) { return monomial_text(spec, m); }, rational_text, "*");
}

std::string to_text(const JetSpec &spec, const BasisCovector &b)
{
    if (b.is_dx()) {
        return "dx(" + spec.base_names().at(b.index()) + ")";
    }
    std::string out = "theta(" + spec.field_names().at(b.index());
    if (!b.multi_index().is_zero()) {
        out += "; " + subscript_names(spec, b.multi_index(), ",");
    }
    return out + ")";
}

std::string to_text(const JetSpec &spec, const Form &f)
{
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[w, c] : f.terms()) {
        std::string basis;
        for (const auto &b : w) {
            basis += (basis.empty() ? "" : "^") + to_text(spec, b);
        }
        std::string body;
        bool negative = false;
        if (w.empty()) {
            body = to_text(spec, c);
            if (c.size() == 1 && c.terms().begin()->second < 0) {
                negative = true;
                body = to_text(spec, -c);
            }
            if (!first && c.size() > 1) {
                body = "(" + body + ")";
            }
        } else if (c.size() == 1) {
            const auto &[m, q] = *c.terms().begin();
            negative = q < 0;
            const Expr mag(m, abs(q));
            body = mag == Expr(1) ? basis : to_text(spec, mag) + "*" + basis;
        } else {
            body = "(" + to_text(spec, c) + ")*" + basis;
        }
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += body;
        first = false;
    }
    return out;
}

std::string to_latex(const JetSpec &spec, const JetCoordinate &c)
{
    if (c.is_base()) {
        return spec.base_names().at(c.index());
    }
    const auto &name = spec.field_names().at(c.index());
    if (c.multi_index().is_zero()) {
        return name;
    }
    return name + "_{" + subscript_names(spec, c.multi_index(), "") + "}";
}

std::string to_latex(const JetSpec &spec, const Expr &e)
{
    return signed_sum(
        e, [&](const Monomial &m) { return monomial_latex(spec, m); }, rational_latex, " ");
}

std::string to_latex(const JetSpec &spec, const BasisCovector &b)
{
    if (b.is_dx()) {
        return "\\mathrm{d}" + spec.base_names().at(b.index());
    }
    std::string out = "\\vartheta^{" + std::to_string(b.index() + 1) + "}";
    if (!b.multi_index().is_zero()) {
        out += "_{" + subscript_names(spec, b.multi_index(), "") + "}";
    }
    return out;
}

std::string latex_sum(const JetSpec &spec, const std::vector<std::pair<Expr, std::string>> &terms)
{
    std::string out;
    for (const auto &[c, basis] : terms) {
        if (c.is_zero()) {
            continue;
        }
        bool negative = false;
        std::string coeff;
        if (c.size() == 1) {
            const auto &[m, q] = *c.terms().begin();
            negative = q < 0;
            const Expr mag(m, abs(q));
            if (mag != Expr(1) || basis.empty()) {
                coeff = to_latex(spec, mag);
            }
        } else {
            coeff = "\\left(" + to_latex(spec, c) + "\\right)";
        }
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (coeff.empty()) {
            out += basis;
        } else if (basis.empty()) {
            out += coeff;
        } else {
            out += coeff + "\\," + basis;
        }
    }
    return out.empty() ? "0" : out;
}

std::string to_latex(const JetSpec &spec, const Form &f)
{
    std::vector<std::pair<Expr, std::string>> terms;
    for (const auto &[w, c] : f.terms()) {
        std::string basis;
        for (const auto &b : w) {
            basis += (basis.empty() ? "" : "\\wedge") + to_latex(spec, b);
        }
        terms.emplace_back(c, basis);
    }
    return latex_sum(spec, terms);
}

} // namespace jetvar
