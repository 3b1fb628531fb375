#ifndef JETVAR_FORMS_HPP
#define JETVAR_FORMS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <jetvar/expr.hpp>

namespace jetvar
{

// Element of the adapted coframe: a contact form theta^i_p = d y^i_p - y^i_{p+lambda} dx^lambda,
// or a base differential dx^lambda. Contact covectors order before base ones.
class BasisCovector
{
public:
    enum class Kind : std::uint8_t { theta, dx };

    static BasisCovector theta(std::size_t component, MultiIndex p)
    {
        return BasisCovector(Kind::theta, component, std::move(p));
    }
    static BasisCovector dx(std::size_t direction) { return BasisCovector(Kind::dx, direction, MultiIndex{}); }

    Kind kind() const noexcept { return kind_; }
    bool is_theta() const noexcept { return kind_ == Kind::theta; }
    bool is_dx() const noexcept { return kind_ == Kind::dx; }
    std::size_t index() const noexcept { return index_; }
    const MultiIndex &multi_index() const noexcept { return p_; }

    bool operator==(const BasisCovector &) const = default;
    std::strong_ordering operator<=>(const BasisCovector &other) const;

private:
    BasisCovector(Kind kind, std::size_t index, MultiIndex p) : kind_(kind), index_(index), p_(std::move(p)) {}

    Kind kind_;
    std::size_t index_;
    MultiIndex p_;
};

// Strictly increasing list of basis covectors.
using Wedge = std::vector<BasisCovector>;

std::uint32_t contact_degree(const Wedge &w) noexcept;
std::uint32_t horizontal_degree(const Wedge &w) noexcept;

// Homogeneous differential form of degree k with polynomial coefficients.
class Form
{
public:
    using TermMap = std::map<Wedge, Expr>;

    // The zero form of the given degree.
    explicit Form(std::uint32_t degree = 0) : degree_(degree) {}
    // A 0-form.
    Form(const Expr &f);

    static Form covector(const BasisCovector &b);
    static Form dx(std::size_t direction) { return covector(BasisCovector::dx(direction)); }
    static Form theta(std::size_t component, MultiIndex p) { return covector(BasisCovector::theta(component, std::move(p))); }

    std::uint32_t degree() const noexcept { return degree_; }
    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::uint32_t order() const noexcept;

    // Coefficient of a canonical wedge; zero if absent.
    Expr coefficient(const Wedge &w) const;

    // Adds c * w, where w may be unsorted or repeat covectors; the sign of the
    // sorting permutation is folded into the coefficient.
    void add_term(Wedge w, const Expr &c);

    Form &operator+=(const Form &other);
    Form &operator-=(const Form &other);
    friend Form operator+(Form a, const Form &b) { return a += b; }
    friend Form operator-(Form a, const Form &b) { return a -= b; }
    Form operator-() const;
    friend Form operator*(const Expr &f, const Form &a);

    bool operator==(const Form &other) const = default;

private:
    void check_degree(const Form &other) const;
    void add_canonical(const Wedge &w, const Expr &c);

    std::uint32_t degree_;
    TermMap terms_;
};

Form wedge(const Form &a, const Form &b);

// omega = dx^1 ^ ... ^ dx^n (unit normalisation).
Form volume(const JetSpec &spec);
// omega_lambda = i_{d/dx^lambda} omega.
Form volume_minor(const JetSpec &spec, std::size_t lambda);
// omega_{lambda mu} = i_{d/dx^mu} omega_lambda.
Form volume_minor(const JetSpec &spec, std::size_t lambda, std::size_t mu);

// d y^i_p expressed in the adapted basis: theta^i_p + y^i_{p+lambda} dx^lambda.
Form from_holonomic(const JetSpec &spec, std::size_t component, const MultiIndex &p);

// Pure contact-degree components in increasing contact degree; empty for the zero form.
std::vector<std::pair<std::uint32_t, Form>> contact_split(const Form &a);

// Contact-degree-0 part when degree <= n, contact-degree-(k-n) part otherwise.
Form horizontalize(const JetSpec &spec, const Form &a);
Form vertical(const JetSpec &spec, const Form &a);

Form exterior_d(const JetSpec &spec, const Form &a);
Form d_h(const JetSpec &spec, const Form &a);
Form d_v(const Form &a);

// True iff h(a) = 0. Every form of degree > n is contact.
bool is_contact(const JetSpec &spec, const Form &a);

} // namespace jetvar

#endif
