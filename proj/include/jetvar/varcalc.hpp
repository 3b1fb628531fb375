#ifndef JETVAR_VARCALC_HPP
#define JETVAR_VARCALC_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include <jetvar/expr.hpp>
#include <jetvar/forms.hpp>

namespace jetvar
{

// L = density * omega.
struct Lagrangian {
    JetSpec spec;
    Expr density;

    std::uint32_t order() const noexcept { return density.order(); }
    Form to_form() const;
};

// E = sum_i E_i theta^i ^ omega.
struct SourceForm {
    JetSpec spec;
    std::vector<Expr> components; // one per fiber coordinate

    explicit SourceForm(JetSpec s) : spec(std::move(s)), components(spec.m()) {}
    SourceForm(JetSpec s, std::vector<Expr> c);

    std::uint32_t order() const noexcept;
    bool is_zero() const noexcept;
    Form to_form() const;

    bool operator==(const SourceForm &) const = default;
};

// Key (p, i, j) of a Helmholtz component H^p_{ij} theta^i_p ^ theta^j ^ omega.
struct HelmholtzKey {
    MultiIndex p;
    std::size_t i;
    std::size_t j;

    bool operator==(const HelmholtzKey &) const = default;
    std::strong_ordering operator<=>(const HelmholtzKey &other) const;
};

// Nonzero components only; the empty tensor means "locally variational".
struct HelmholtzTensor {
    JetSpec spec;
    std::map<HelmholtzKey, Expr> components;

    bool is_zero() const noexcept { return components.empty(); }
    Form to_form() const;
};

// Key (i, q, lambda) of a momentum term P theta^i_q ^ omega_lambda.
struct MomentumKey {
    std::size_t i;
    MultiIndex q;
    std::size_t lambda;

    bool operator==(const MomentumKey &) const = default;
    std::strong_ordering operator<=>(const MomentumKey &other) const;
};

struct Momentum {
    JetSpec spec;
    std::map<MomentumKey, Expr> coefficients;

    void add(const MomentumKey &key, const Expr &value);
    bool is_zero() const noexcept { return coefficients.empty(); }
    Form to_form() const;
};

enum class Gauge { natural_r1, quasisymmetric_r2, lex_peel };

Gauge parse_gauge(std::string_view name);
std::string_view gauge_name(Gauge g);

struct KolarDecomposition {
    SourceForm source;
    Momentum momentum;
};

// Coefficients alpha_i^p of alpha = sum alpha_i^p theta^i_p ^ omega, keyed by (i, p).
// Throws shape_error if alpha is not 1-contact with horizontal factor omega.
std::map<std::pair<std::size_t, MultiIndex>, Expr> top_contact_coefficients(const JetSpec &spec, const Form &alpha);

// alpha = E - d_h p, with E_i = sum_p (-1)^|p| J_p alpha_i^p.
KolarDecomposition kolar_decompose(const JetSpec &spec, const Form &alpha, Gauge gauge = Gauge::lex_peel);

SourceForm euler_lagrange(const Lagrangian &lagrangian);

// p(alpha) = alpha_i^lambda theta^i ^ omega_lambda; alpha may only contain theta^i, theta^i_lambda.
Momentum momentum_natural_r1(const JetSpec &spec, const Form &alpha);

// The unique momentum with vanishing s-map, for alpha with contact factors of order <= 2.
Momentum momentum_quasisymmetric_r2(const JetSpec &spec, const Form &alpha);

// s(p) = p_i^{lambda mu} theta^i ^ omega_{mu lambda} for the first-order part of p.
Form quasisymmetry_map(const Momentum &p);

struct SecondVariation {
    HelmholtzTensor tensor; // components of H_beta
    Form helmholtz_part;    // H_beta as a form
    Form residual;          // G_beta = H_beta - beta
};

// beta = sum beta^p_{ij} theta^i_p ^ theta^j ^ omega; throws shape_error otherwise.
SecondVariation second_variation(const JetSpec &spec, const Form &beta);

HelmholtzTensor helmholtz(const SourceForm &source);

bool is_locally_variational(const SourceForm &source);

// Numeric first-variation oracle on a box. Sections and variations are
// polynomial maps X -> Y given as expressions in the base coordinates.
struct FirstVariation {
    double delta_action;           // d/d eps of the action along s + eps * eta, at eps = 0
    double euler_lagrange_pairing; // integral of E(j s) . eta over the box
};

struct Box {
    std::vector<std::pair<double, double>> intervals;
};

FirstVariation numeric_first_variation(const Lagrangian &lagrangian, const std::vector<Expr> &section,
                                       const std::vector<Expr> &variation, const Box &box, std::size_t grid);

} // namespace jetvar

#endif
