#include <algorithm>
#include <cmath>
#include <optional>

#include <jetvar/expr.hpp>

namespace jetvar
{

namespace
{

std::vector<std::string> default_names(std::size_t count, const std::vector<std::string> &preferred,
                                       const std::string &stem)
{
    std::vector<std::string> out;
    if (count <= preferred.size()) {
        out.assign(preferred.begin(), preferred.begin() + static_cast<std::ptrdiff_t>(count));
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(stem + std::to_string(i + 1));
    }
    return out;
}

Rational power(const Rational &base, std::uint32_t e)
{
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Monomial with one factor's exponent lowered by one and, optionally, another
// coordinate multiplied in.
Monomial lower_and_multiply(const Monomial &m, std::size_t factor, const std::optional<JetCoordinate> &extra)
{
    std::vector<Monomial::Factor> fs = m.factors();
    if (--fs[factor].second == 0) {
        fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(factor));
    }
    Monomial lowered(std::move(fs));
    return extra ? lowered * Monomial::of(*extra) : lowered;
}

} // namespace

JetSpec::JetSpec(std::size_t n, std::size_t m)
    : JetSpec(default_names(n, {"x", "y", "z"}, "x"), default_names(m, {"u", "v", "w"}, "u"))
{
}

JetSpec::JetSpec(std::vector<std::string> base_names, std::vector<std::string> field_names)
    : base_names_(std::move(base_names)), field_names_(std::move(field_names))
{
    if (base_names_.empty() || field_names_.empty()) {
        throw dimension_error("a jet chart needs n >= 1 and m >= 1");
    }
}

std::strong_ordering JetCoordinate::operator<=>(const JetCoordinate &other) const
{
    if (auto c = kind_ <=> other.kind_; c != 0) {
        return c;
    }
    if (auto c = index_ <=> other.index_; c != 0) {
        return c;
    }
    return p_ <=> other.p_;
}

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors))
{
    std::sort(factors_.begin(), factors_.end(), [](const Factor &a, const Factor &b) { return a.first < b.first; });
    // Merge repeated coordinates and drop zero exponents.
    std::vector<Factor> merged;
    for (auto &f : factors_) {
        if (f.second == 0) {
            continue;
        }
        if (!merged.empty() && merged.back().first == f.first) {
            merged.back().second += f.second;
        } else {
            merged.push_back(std::move(f));
        }
    }
    factors_ = std::move(merged);
}

Monomial Monomial::of(const JetCoordinate &c, std::uint32_t power)
{
    return Monomial({{c, power}});
}

std::uint32_t Monomial::degree() const noexcept
{
    std::uint32_t d = 0;
    for (const auto &f : factors_) {
        d += f.second;
    }
    return d;
}

std::uint32_t Monomial::fiber_degree() const noexcept
{
    std::uint32_t d = 0;
    for (const auto &f : factors_) {
        if (f.first.is_field()) {
            d += f.second;
        }
    }
    return d;
}

std::uint32_t Monomial::base_degree() const noexcept
{
    return degree() - fiber_degree();
}

std::uint32_t Monomial::exponent_of(const JetCoordinate &c) const
{
    for (const auto &f : factors_) {
        if (f.first == c) {
            return f.second;
        }
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial &other) const
{
    std::vector<Factor> out;
    out.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            out.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    Monomial r;
    r.factors_ = std::move(out);
    return r;
}

bool MonomialOrder::operator()(const Monomial &a, const Monomial &b) const
{
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) {
        return da > db;
    }
    auto ia = a.factors().rbegin();
    auto ib = b.factors().rbegin();
    for (; ia != a.factors().rend() && ib != b.factors().rend(); ++ia, ++ib) {
        if (ia->first != ib->first) {
            return ia->first > ib->first;
        }
        if (ia->second != ib->second) {
            return ia->second > ib->second;
        }
    }
    return ia == a.factors().rend() && ib != b.factors().rend();
}

Expr::Expr(const Rational &c)
{
    add_term(Monomial{}, c);
}

Expr::Expr(const JetCoordinate &c)
{
    add_term(Monomial::of(c), 1);
}

Expr::Expr(const Monomial &m, const Rational &c)
{
    add_term(m, c);
}

bool Expr::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Expr::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Expr::order() const noexcept
{
    std::uint32_t r = 0;
    for (const auto &[m, c] : terms_) {
        for (const auto &f : m.factors()) {
            r = std::max(r, f.first.order());
        }
    }
    return r;
}

std::uint32_t Expr::degree() const noexcept
{
    // The first monomial has the highest degree.
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::set<JetCoordinate> Expr::coordinates() const
{
    std::set<JetCoordinate> out;
    for (const auto &[m, c] : terms_) {
        for (const auto &f : m.factors()) {
            out.insert(f.first);
        }
    }
    return out;
}

void Expr::add_term(const Monomial &m, const Rational &c)
{
    if (c == 0) {
        return;
    }
    Rational q = c;
    q.canonicalize();
    auto [it, inserted] = terms_.try_emplace(m, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Expr &Expr::operator+=(const Expr &other)
{
    for (const auto &[m, c] : other.terms_) {
        add_term(m, c);
    }
    return *this;
}

Expr &Expr::operator-=(const Expr &other)
{
    for (const auto &[m, c] : other.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Expr operator*(const Expr &a, const Expr &b)
{
    Expr r;
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

Expr &Expr::operator*=(const Expr &other)
{
    *this = *this * other;
    return *this;
}

Expr &Expr::operator*=(const Rational &c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    Rational q = c;
    q.canonicalize();
    for (auto &[m, v] : terms_) {
        v *= q;
    }
    return *this;
}

Expr Expr::operator-() const
{
    Expr r = *this;
    for (auto &[m, v] : r.terms_) {
        v = -v;
    }
    return r;
}

bool Expr::operator==(const Expr &other) const
{
    if (terms_.size() != other.terms_.size()) {
        return false;
    }
    return std::equal(terms_.begin(), terms_.end(), other.terms_.begin(),
                      [](const auto &a, const auto &b) { return a.first == b.first && a.second == b.second; });
}

Expr pow(const Expr &base, std::uint32_t exponent)
{
    Expr r(1);
    Expr b = base;
    while (exponent > 0) {
        if (exponent & 1u) {
            r *= b;
        }
        exponent >>= 1;
        if (exponent > 0) {
            b *= b;
        }
    }
    return r;
}

Expr partial(const Expr &f, const JetCoordinate &c)
{
    Expr r;
    for (const auto &[m, coeff] : f.terms()) {
        const auto &fs = m.factors();
        for (std::size_t k = 0; k < fs.size(); ++k) {
            if (fs[k].first == c) {
                r.add_term(lower_and_multiply(m, k, std::nullopt), coeff * fs[k].second);
                break;
            }
        }
    }
    return r;
}

Expr total_derivative(const Expr &f, std::size_t direction)
{
    Expr r;
    for (const auto &[m, coeff] : f.terms()) {
        const auto &fs = m.factors();
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const auto &c = fs[k].first;
            if (c.is_base()) {
                if (c.index() == direction) {
                    r.add_term(lower_and_multiply(m, k, std::nullopt), coeff * fs[k].second);
                }
            } else {
                auto raised = JetCoordinate::field(c.index(), c.multi_index().add_direction(direction));
                r.add_term(lower_and_multiply(m, k, raised), coeff * fs[k].second);
            }
        }
    }
    return r;
}

Expr iterated_total(const Expr &f, const MultiIndex &p)
{
    Expr r = f;
    for (std::size_t lambda = 0; lambda < p.size(); ++lambda) {
        for (std::uint32_t k = 0; k < p[lambda]; ++k) {
            if (r.is_zero()) {
                return r;
            }
            r = total_derivative(r, lambda);
        }
    }
    return r;
}

Rational eval(const Expr &f, const std::map<JetCoordinate, Rational> &assignment)
{
    Rational sum = 0;
    for (const auto &[m, coeff] : f.terms()) {
        Rational term = coeff;
        for (const auto &[c, e] : m.factors()) {
            auto it = assignment.find(c);
            if (it == assignment.end()) {
                throw unbound_variable_error("no value assigned to a coordinate occurring in the expression");
            }
            term *= power(it->second, e);
        }
        sum += term;
    }
    return sum;
}

double eval_double(const Expr &f, const std::function<double(const JetCoordinate &)> &value)
{
    double sum = 0.0;
    for (const auto &[m, coeff] : f.terms()) {
        double term = coeff.get_d();
        for (const auto &[c, e] : m.factors()) {
            term *= std::pow(value(c), static_cast<double>(e));
        }
        sum += term;
    }
    return sum;
}

std::map<std::uint32_t, Expr> split_by_fiber_degree(const Expr &f)
{
    std::map<std::uint32_t, Expr> out;
    for (const auto &[m, c] : f.terms()) {
        out[m.fiber_degree()].add_term(m, c);
    }
    return out;
}

Expr at_zero_section(const Expr &f)
{
    Expr r;
    for (const auto &[m, c] : f.terms()) {
        if (m.fiber_degree() == 0) {
            r.add_term(m, c);
        }
    }
    return r;
}

} // namespace jetvar
