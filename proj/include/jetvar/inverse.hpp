#ifndef JETVAR_INVERSE_HPP
#define JETVAR_INVERSE_HPP

#include <cstdint>
#include <optional>

#include <jetvar/forms.hpp>
#include <jetvar/varcalc.hpp>

namespace jetvar
{

struct HomotopyResult {
    Form primitive; // K(a)
    Form defect;    // a - d K(a) - K(d a): the restriction of a to the zero section
};

// Fiber-radial homotopy K(a) = int_0^1 A_t^*(i_Delta a) dt / t with A_t(x, y_p) = (x, t y_p)
// and Delta the vertical Liouville field. Exact on polynomial coefficients.
HomotopyResult fiber_homotopy(const JetSpec &spec, const Form &a);

// density = sum_i y^i int_0^1 E_i(x, t y) dt. Requires a locally variational E.
Lagrangian volterra_vainberg(const SourceForm &source);

// Some Lagrangian of jet order <= order with the given Euler-Lagrange form, found by
// exact solution over a polynomial ansatz, or nullopt if none exists.
std::optional<Lagrangian> lagrangian_of_order(const SourceForm &source, std::uint32_t order);

// Lowest-order Lagrangian for E. Orders above `order_cap` (default 2 order(E) + 1)
// are not searched; the homotopy candidate is returned if nothing lower is found.
Lagrangian minimal_lagrangian(const SourceForm &source, std::optional<std::uint32_t> order_cap = std::nullopt);

bool is_variationally_trivial(const Lagrangian &lagrangian);

// Horizontal (n-1)-form alpha with d_h alpha = L omega, for a variationally trivial L.
Form trivial_primitive(const Lagrangian &lagrangian);

} // namespace jetvar

#endif
