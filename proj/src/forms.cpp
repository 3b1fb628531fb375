#include <algorithm>
#include <string>

#include <jetvar/forms.hpp>

namespace jetvar
{

std::strong_ordering BasisCovector::operator<=>(const BasisCovector &other) const
{
    if (auto c = kind_ <=> other.kind_; c != 0) {
        return c;
    }
    if (auto c = index_ <=> other.index_; c != 0) {
        return c;
    }
    return p_ <=> other.p_;
}

std::uint32_t contact_degree(const Wedge &w) noexcept
{
    return static_cast<std::uint32_t>(std::count_if(w.begin(), w.end(), [](const auto &b) { return b.is_theta(); }));
}

std::uint32_t horizontal_degree(const Wedge &w) noexcept
{
    return static_cast<std::uint32_t>(w.size()) - contact_degree(w);
}

Form::Form(const Expr &f) : degree_(0)
{
    add_canonical({}, f);
}

Form Form::covector(const BasisCovector &b)
{
    Form r(1);
    r.add_canonical({b}, Expr(1));
    return r;
}

std::uint32_t Form::order() const noexcept
{
    std::uint32_t r = 0;
    for (const auto &[w, c] : terms_) {
        r = std::max(r, c.order());
        for (const auto &b : w) {
            if (b.is_theta()) {
                r = std::max(r, b.multi_index().degree());
            }
        }
    }
    return r;
}

Expr Form::coefficient(const Wedge &w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Expr{} : it->second;
}

void Form::add_canonical(const Wedge &w, const Expr &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void Form::add_term(Wedge w, const Expr &c)
{
    if (w.size() != degree_) {
        throw dimension_error("wedge of length " + std::to_string(w.size()) + " added to a form of degree "
                              + std::to_string(degree_));
    }
    // Insertion sort, tracking the parity of transpositions.
    bool odd = false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t j = i; j > 0; --j) {
            auto cmp = w[j - 1] <=> w[j];
            if (cmp == 0) {
                return;
            }
            if (cmp < 0) {
                break;
            }
            std::swap(w[j - 1], w[j]);
            odd = !odd;
        }
    }
    add_canonical(w, odd ? -c : c);
}

void Form::check_degree(const Form &other) const
{
    if (degree_ != other.degree_ && !is_zero() && !other.is_zero()) {
        throw dimension_error("cannot add forms of degree " + std::to_string(degree_) + " and "
                              + std::to_string(other.degree_));
    }
}

Form &Form::operator+=(const Form &other)
{
    check_degree(other);
    if (is_zero()) {
        degree_ = other.degree_;
    }
    for (const auto &[w, c] : other.terms_) {
        add_canonical(w, c);
    }
    return *this;
}

Form &Form::operator-=(const Form &other)
{
    check_degree(other);
    if (is_zero()) {
        degree_ = other.degree_;
    }
    for (const auto &[w, c] : other.terms_) {
        add_canonical(w, -c);
    }
    return *this;
}

Form Form::operator-() const
{
    Form r(degree_);
    for (const auto &[w, c] : terms_) {
        r.terms_.emplace(w, -c);
    }
    return r;
}

Form operator*(const Expr &f, const Form &a)
{
    Form r(a.degree_);
    for (const auto &[w, c] : a.terms_) {
        r.add_canonical(w, f * c);
    }
    return r;
}

Form wedge(const Form &a, const Form &b)
{
    Form r(a.degree() + b.degree());
    for (const auto &[wa, ca] : a.terms()) {
        for (const auto &[wb, cb] : b.terms()) {
            Wedge w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(std::move(w), ca * cb);
        }
    }
    return r;
}

Form volume(const JetSpec &spec)
{
    Wedge w;
    for (std::size_t l = 0; l < spec.n(); ++l) {
        w.push_back(BasisCovector::dx(l));
    }
    Form r(static_cast<std::uint32_t>(spec.n()));
    r.add_term(std::move(w), Expr(1));
    return r;
}

namespace
{

// Interior product of a pure-dx wedge term by d/dx^lambda.
Form contract_base(const Form &a, std::size_t lambda)
{
    if (a.degree() == 0) {
        return Form(0);
    }
    Form r(a.degree() - 1);
    for (const auto &[w, c] : a.terms()) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] == BasisCovector::dx(lambda)) {
                Wedge rest = w;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
                r.add_term(std::move(rest), (j % 2 == 0) ? c : -c);
            }
        }
    }
    return r;
}

void check_direction(const JetSpec &spec, std::size_t lambda)
{
    if (lambda >= spec.n()) {
        throw index_error("direction " + std::to_string(lambda) + " out of range for base dimension "
                          + std::to_string(spec.n()));
    }
}

} // namespace

Form volume_minor(const JetSpec &spec, std::size_t lambda)
{
    check_direction(spec, lambda);
    return contract_base(volume(spec), lambda);
}

Form volume_minor(const JetSpec &spec, std::size_t lambda, std::size_t mu)
{
    check_direction(spec, mu);
    return contract_base(volume_minor(spec, lambda), mu);
}

Form from_holonomic(const JetSpec &spec, std::size_t component, const MultiIndex &p)
{
    if (component >= spec.m()) {
        throw index_error("fiber index " + std::to_string(component) + " out of range");
    }
    if (p.size() != spec.n()) {
        throw dimension_error("multi-index length does not match the base dimension");
    }
    Form r = Form::theta(component, p);
    for (std::size_t l = 0; l < spec.n(); ++l) {
        r += Expr::field(component, p.add_direction(l)) * Form::dx(l);
    }
    return r;
}

std::vector<std::pair<std::uint32_t, Form>> contact_split(const Form &a)
{
    std::map<std::uint32_t, Form> parts;
    for (const auto &[w, c] : a.terms()) {
        auto [it, inserted] = parts.try_emplace(contact_degree(w), a.degree());
        it->second.add_term(w, c);
    }
    return {parts.begin(), parts.end()};
}

Form horizontalize(const JetSpec &spec, const Form &a)
{
    const std::uint32_t n = static_cast<std::uint32_t>(spec.n());
    const std::uint32_t target = a.degree() > n ? a.degree() - n : 0;
    Form r(a.degree());
    for (const auto &[w, c] : a.terms()) {
        if (contact_degree(w) == target) {
            r.add_term(w, c);
        }
    }
    return r;
}

Form vertical(const JetSpec &spec, const Form &a)
{
    return a - horizontalize(spec, a);
}

Form d_v(const Form &a)
{
    Form r(a.degree() + 1);
    for (const auto &[w, c] : a.terms()) {
        for (const auto &coord : c.coordinates()) {
            if (!coord.is_field()) {
                continue;
            }
            Wedge nw;
            nw.reserve(w.size() + 1);
            nw.push_back(BasisCovector::theta(coord.index(), coord.multi_index()));
            nw.insert(nw.end(), w.begin(), w.end());
            r.add_term(std::move(nw), partial(c, coord));
        }
    }
    return r;
}

Form d_h(const JetSpec &spec, const Form &a)
{
    const std::size_t n = spec.n();
    Form r(a.degree() + 1);
    for (const auto &[w, c] : a.terms()) {
        for (std::size_t l = 0; l < n; ++l) {
            Expr dc = total_derivative(c, l);
            if (!dc.is_zero()) {
                Wedge nw;
                nw.reserve(w.size() + 1);
                nw.push_back(BasisCovector::dx(l));
                nw.insert(nw.end(), w.begin(), w.end());
                r.add_term(std::move(nw), dc);
            }
        }
        // d_h theta^i_p = -theta^i_{p+lambda} ^ dx^lambda, inserted at the factor's slot.
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (!w[j].is_theta()) {
                continue;
            }
            const Expr signed_c = (j % 2 == 0) ? -c : c;
            for (std::size_t l = 0; l < n; ++l) {
                Wedge nw;
                nw.reserve(w.size() + 1);
                nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
                nw.push_back(BasisCovector::theta(w[j].index(), w[j].multi_index().add_direction(l)));
                nw.push_back(BasisCovector::dx(l));
                nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end());
                // Sign (-1)^j for passing d over the first j factors.
                r.add_term(std::move(nw), signed_c);
            }
        }
    }
    return r;
}

Form exterior_d(const JetSpec &spec, const Form &a)
{
    return d_h(spec, a) + d_v(a);
}

bool is_contact(const JetSpec &spec, const Form &a)
{
    if (a.degree() > spec.n()) {
        return true;
    }
    return horizontalize(spec, a).is_zero();
}

} // namespace jetvar
