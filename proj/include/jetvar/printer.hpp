#ifndef JETVAR_PRINTER_HPP
#define JETVAR_PRINTER_HPP

#include <string>

#include <jetvar/expr.hpp>
#include <jetvar/forms.hpp>
#include <jetvar/varcalc.hpp>

namespace jetvar
{

// Text in the problem-file grammar; parse(to_text(e)) == e.
std::string to_text(const JetSpec &spec, const JetCoordinate &c);
std::string to_text(const JetSpec &spec, const Expr &e);
std::string to_text(const JetSpec &spec, const BasisCovector &b);
std::string to_text(const JetSpec &spec, const Form &f);

std::string to_latex(const JetSpec &spec, const JetCoordinate &c);
std::string to_latex(const JetSpec &spec, const Expr &e);
// \vartheta^{1}_{xx}, \mathrm{d}x
std::string to_latex(const JetSpec &spec, const BasisCovector &b);
std::string to_latex(const JetSpec &spec, const Form &f);
// Sum of coefficient * basis terms, e.g. "-u_{xx}\,\vartheta^{1}\wedge\omega".
std::string latex_sum(const JetSpec &spec, const std::vector<std::pair<Expr, std::string>> &terms);

// 1-based component labels: "E_1", "H^{(1)}_{11}", "H^{(1,0)}_{1,2}" (comma once m > 9).
std::string source_label(std::size_t i);
std::string helmholtz_label(const HelmholtzKey &key);

// "(1,0)" style rendering of a multi-index.
std::string to_text(const MultiIndex &p);

} // namespace jetvar

#endif
