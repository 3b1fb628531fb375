#ifndef JETVAR_EXPR_HPP
#define JETVAR_EXPR_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <jetvar/errors.hpp>
#include <jetvar/multiindex.hpp>

namespace jetvar
{

using Rational = mpq_class;

// Chart data: base dimension n, fiber dimension m and variable names.
class JetSpec
{
public:
    JetSpec(std::size_t n, std::size_t m);
    JetSpec(std::vector<std::string> base_names, std::vector<std::string> field_names);

    std::size_t n() const noexcept { return base_names_.size(); }
    std::size_t m() const noexcept { return field_names_.size(); }
    const std::vector<std::string> &base_names() const noexcept { return base_names_; }
    const std::vector<std::string> &field_names() const noexcept { return field_names_; }

    bool operator==(const JetSpec &) const = default;

private:
    std::vector<std::string> base_names_;
    std::vector<std::string> field_names_;
};

// Either the base coordinate x^lambda or the jet coordinate y^i_p.
// Base coordinates order before field coordinates; fields order by (i, p).
class JetCoordinate
{
public:
    enum class Kind : std::uint8_t { base, field };

    static JetCoordinate base(std::size_t direction) { return JetCoordinate(Kind::base, direction, MultiIndex{}); }
    static JetCoordinate field(std::size_t component, MultiIndex p)
    {
        return JetCoordinate(Kind::field, component, std::move(p));
    }

    Kind kind() const noexcept { return kind_; }
    bool is_base() const noexcept { return kind_ == Kind::base; }
    bool is_field() const noexcept { return kind_ == Kind::field; }
    // Direction lambda for base coordinates, fiber index i for field coordinates.
    std::size_t index() const noexcept { return index_; }
    const MultiIndex &multi_index() const noexcept { return p_; }
    std::uint32_t order() const noexcept { return is_field() ? p_.degree() : 0; }

    bool operator==(const JetCoordinate &) const = default;
    std::strong_ordering operator<=>(const JetCoordinate &other) const;

private:
    JetCoordinate(Kind kind, std::size_t index, MultiIndex p) : kind_(kind), index_(index), p_(std::move(p)) {}

    Kind kind_;
    std::size_t index_;
    MultiIndex p_;
};

// Power product of jet coordinates, factors sorted ascending by coordinate.
class Monomial
{
public:
    using Factor = std::pair<JetCoordinate, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);

    static Monomial of(const JetCoordinate &c, std::uint32_t power = 1);

    const std::vector<Factor> &factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }
    std::uint32_t degree() const noexcept;
    // Number of field-coordinate factors counted with multiplicity.
    std::uint32_t fiber_degree() const noexcept;
    // Degree in base coordinates only.
    std::uint32_t base_degree() const noexcept;
    std::uint32_t exponent_of(const JetCoordinate &c) const;

    Monomial operator*(const Monomial &other) const;

    bool operator==(const Monomial &) const = default;

private:
    std::vector<Factor> factors_;
};

// Canonical monomial order: higher total degree first, then by comparing
// factors from the largest coordinate downward.
struct MonomialOrder {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

// Polynomial in jet coordinates with exact rational coefficients, kept in
// canonical form (no zero coefficients, fixed monomial order).
class Expr
{
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Expr() = default;
    Expr(const Rational &c);
    Expr(long c) : Expr(Rational(c)) {}
    Expr(int c) : Expr(Rational(c)) {}
    explicit Expr(const JetCoordinate &c);
    Expr(const Monomial &m, const Rational &c);

    static Expr base(std::size_t direction) { return Expr(JetCoordinate::base(direction)); }
    static Expr field(std::size_t component, MultiIndex p) { return Expr(JetCoordinate::field(component, std::move(p))); }

    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    // Constant term (coefficient of the empty monomial).
    Rational constant_term() const;
    std::size_t size() const noexcept { return terms_.size(); }

    // Max |p| over occurring field coordinates; 0 if none.
    std::uint32_t order() const noexcept;
    std::uint32_t degree() const noexcept;
    std::set<JetCoordinate> coordinates() const;

    void add_term(const Monomial &m, const Rational &c);

    Expr &operator+=(const Expr &other);
    Expr &operator-=(const Expr &other);
    Expr &operator*=(const Expr &other);
    Expr &operator*=(const Rational &c);

    friend Expr operator+(Expr a, const Expr &b) { return a += b; }
    friend Expr operator-(Expr a, const Expr &b) { return a -= b; }
    friend Expr operator*(const Expr &a, const Expr &b);
    Expr operator-() const;

    bool operator==(const Expr &other) const;

private:
    TermMap terms_;
};

Expr pow(const Expr &base, std::uint32_t exponent);

// Partial derivative treating every jet coordinate as independent.
Expr partial(const Expr &f, const JetCoordinate &c);

// D_lambda f = d_lambda f + sum over occurring y^i_p of y^i_{p+lambda} d f / d y^i_p.
Expr total_derivative(const Expr &f, std::size_t direction);

// J_p f, peeling directions in increasing order.
Expr iterated_total(const Expr &f, const MultiIndex &p);

// Exact evaluation. Throws unbound_variable_error for a coordinate missing from the assignment.
Rational eval(const Expr &f, const std::map<JetCoordinate, Rational> &assignment);

// Floating-point evaluation through a coordinate lookup.
double eval_double(const Expr &f, const std::function<double(const JetCoordinate &)> &value);

// Groups monomials by fiber degree (number of field factors with multiplicity).
std::map<std::uint32_t, Expr> split_by_fiber_degree(const Expr &f);

// Drops every monomial containing a field coordinate (restriction to the zero section).
Expr at_zero_section(const Expr &f);

} // namespace jetvar

#endif
