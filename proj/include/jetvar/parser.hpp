#ifndef JETVAR_PARSER_HPP
#define JETVAR_PARSER_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <jetvar/forms.hpp>
#include <jetvar/varcalc.hpp>

namespace jetvar
{

// Expression grammar:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := unary ('^' (natural | unary))*      '^' natural is a power, otherwise a wedge
//   unary  := '-' unary | atom
//   atom   := integer ['/' integer] | ident | ident '_{' ident (',' ident)* '}'
//           | 'dx(' ident ')' | 'theta(' ident [';' ident (',' ident)*] ')'
//           | 'dy(' ident [';' ident (',' ident)*] ')' | '(' expr ')'
// `bindings` supplies named subexpressions. Throws parse_error.
Form parse_form(const JetSpec &spec, std::string_view text, const std::map<std::string, Form> &bindings = {},
                std::size_t line = 1);

// As parse_form, but the result must be a 0-form.
Expr parse_expr(const JetSpec &spec, std::string_view text, const std::map<std::string, Form> &bindings = {},
                std::size_t line = 1);

// Line-oriented problem file:
//   base x, y
//   fields u, v
//   L = ...            Lagrangian density
//   E_1 = ... / E_u = ...  source form components
//   alpha = ...        form input
//   name = ...         any other named binding
// '#' starts a comment.
struct ProblemFile {
    JetSpec spec;
    std::map<std::string, Form> bindings;
    std::optional<Lagrangian> lagrangian;
    std::optional<SourceForm> source;
    std::optional<Form> alpha;
};

ProblemFile parse_problem(std::string_view text);

} // namespace jetvar

#endif
