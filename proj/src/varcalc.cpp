#include <string>

#include <jetvar/printer.hpp>
#include <jetvar/varcalc.hpp>

namespace jetvar
{

namespace
{

using CoefficientMap = std::map<std::pair<std::size_t, MultiIndex>, Expr>;

JetCoordinate yc(std::size_t i, const MultiIndex &p)
{
    return JetCoordinate::field(i, p);
}

int parity_sign(std::uint32_t k)
{
    return k % 2 == 0 ? 1 : -1;
}

// Largest direction with a nonzero entry.
std::size_t last_direction(const MultiIndex &p)
{
    for (std::size_t l = p.size(); l-- > 0;) {
        if (p[l] > 0) {
            return l;
        }
    }
    throw index_error("zero multi-index has no direction");
}

SourceForm source_from_formula(const JetSpec &spec, const CoefficientMap &coeffs)
{
    SourceForm e(spec);
    for (const auto &[key, a] : coeffs) {
        const auto &[i, p] = key;
        e.components[i] += Rational(parity_sign(p.degree())) * iterated_total(a, p);
    }
    return e;
}

void check_component(const JetSpec &spec, std::size_t i)
{
    if (i >= spec.m()) {
        throw index_error("fiber index " + std::to_string(i) + " out of range");
    }
}

// theta^i ^ theta^j is antisymmetric in (i, j); keep only the antisymmetric part of
// the zero-multi-index block so components match the coefficients of the form.
void antisymmetrize_zero_block(HelmholtzTensor &h)
{
    const MultiIndex zero(h.spec.n());
    std::map<HelmholtzKey, Expr> out;
    for (const auto &[key, c] : h.components) {
        if (!key.p.is_zero()) {
            out.emplace(key, c);
            continue;
        }
        Expr a = c;
        if (auto it = h.components.find({zero, key.j, key.i}); it != h.components.end()) {
            a -= it->second;
        }
        a *= Rational(1, 2);
        if (!a.is_zero()) {
            out.emplace(key, std::move(a));
        }
    }
    // Keys present only as (j, i) still contribute to (i, j).
    for (const auto &[key, c] : h.components) {
        if (key.p.is_zero() && !h.components.contains({zero, key.j, key.i})) {
            out.emplace(HelmholtzKey{zero, key.j, key.i}, Rational(-1, 2) * c);
        }
    }
    h.components = std::move(out);
}

} // namespace

Form Lagrangian::to_form() const
{
    return density * volume(spec);
}

SourceForm::SourceForm(JetSpec s, std::vector<Expr> c) : spec(std::move(s)), components(std::move(c))
{
    if (components.size() != spec.m()) {
        throw dimension_error("source form needs one component per fiber coordinate");
    }
}

std::uint32_t SourceForm::order() const noexcept
{
    std::uint32_t r = 0;
    for (const auto &e : components) {
        r = std::max(r, e.order());
    }
    return r;
}

bool SourceForm::is_zero() const noexcept
{
    return std::all_of(components.begin(), components.end(), [](const Expr &e) { return e.is_zero(); });
}

Form SourceForm::to_form() const
{
    Form out(static_cast<std::uint32_t>(spec.n() + 1));
    const Form omega = volume(spec);
    for (std::size_t i = 0; i < components.size(); ++i) {
        out += components[i] * wedge(Form::theta(i, MultiIndex(spec.n())), omega);
    }
    return out;
}

std::strong_ordering HelmholtzKey::operator<=>(const HelmholtzKey &other) const
{
    if (auto c = p <=> other.p; c != 0) {
        return c;
    }
    if (auto c = i <=> other.i; c != 0) {
        return c;
    }
    return j <=> other.j;
}

Form HelmholtzTensor::to_form() const
{
    Form out(static_cast<std::uint32_t>(spec.n() + 2));
    const Form omega = volume(spec);
    const MultiIndex zero(spec.n());
    for (const auto &[key, h] : components) {
        out += h * wedge(wedge(Form::theta(key.i, key.p), Form::theta(key.j, zero)), omega);
    }
    return out;
}

std::strong_ordering MomentumKey::operator<=>(const MomentumKey &other) const
{
    if (auto c = i <=> other.i; c != 0) {
        return c;
    }
    if (auto c = q <=> other.q; c != 0) {
        return c;
    }
    return lambda <=> other.lambda;
}

void Momentum::add(const MomentumKey &key, const Expr &value)
{
    if (value.is_zero()) {
        return;
    }
    auto [it, inserted] = coefficients.try_emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) {
            coefficients.erase(it);
        }
    }
}

Form Momentum::to_form() const
{
    Form out(static_cast<std::uint32_t>(spec.n()));
    for (const auto &[key, c] : coefficients) {
        out += c * wedge(Form::theta(key.i, key.q), volume_minor(spec, key.lambda));
    }
    return out;
}

Gauge parse_gauge(std::string_view name)
{
    if (name == "natural" || name == "natural-r1") {
        return Gauge::natural_r1;
    }
    if (name == "quasisym" || name == "quasisymmetric-r2") {
        return Gauge::quasisymmetric_r2;
    }
    if (name == "lex" || name == "lex-peel") {
        return Gauge::lex_peel;
    }
    throw std::invalid_argument("unknown gauge '" + std::string(name) + "'");
}

std::string_view gauge_name(Gauge g)
{
    switch (g) {
    case Gauge::natural_r1:
        return "natural";
    case Gauge::quasisymmetric_r2:
        return "quasisym";
    case Gauge::lex_peel:
        return "lex";
    }
    return "lex";
}

CoefficientMap top_contact_coefficients(const JetSpec &spec, const Form &alpha)
{
    CoefficientMap out;
    if (alpha.is_zero()) {
        return out;
    }
    if (alpha.degree() != spec.n() + 1) {
        throw shape_error("expected a form of degree n+1 = " + std::to_string(spec.n() + 1));
    }
    for (const auto &[w, c] : alpha.terms()) {
        // Canonical order puts the single theta first, followed by every dx.
        if (contact_degree(w) != 1 || !w.front().is_theta()) {
            throw shape_error("expected a 1-contact form theta ^ omega, found contact degree "
                              + std::to_string(contact_degree(w)));
        }
        if (w.front().multi_index().size() != spec.n()) {
            throw dimension_error("contact factor multi-index does not match the base dimension");
        }
        check_component(spec, w.front().index());
        out.emplace(std::pair{w.front().index(), w.front().multi_index()}, c);
    }
    return out;
}

KolarDecomposition kolar_decompose(const JetSpec &spec, const Form &alpha, Gauge gauge)
{
    const auto coeffs = top_contact_coefficients(spec, alpha);
    switch (gauge) {
    case Gauge::natural_r1:
        return {source_from_formula(spec, coeffs), momentum_natural_r1(spec, alpha)};
    case Gauge::quasisymmetric_r2:
        return {source_from_formula(spec, coeffs), momentum_quasisymmetric_r2(spec, alpha)};
    case Gauge::lex_peel:
        break;
    }

    // Residual alpha + d_h p, keyed by (p, i) so the highest multi-index is last.
    std::map<std::pair<MultiIndex, std::size_t>, Expr> residual;
    for (const auto &[key, a] : coeffs) {
        residual.emplace(std::pair{key.second, key.first}, a);
    }
    Momentum momentum{spec, {}};
    while (!residual.empty()) {
        auto last = std::prev(residual.end());
        const auto [p, i] = last->first;
        if (p.is_zero()) {
            break;
        }
        const Expr a = last->second;
        residual.erase(last);
        // Adding a theta^i_{p-lambda} ^ omega_lambda to p changes alpha + d_h p by
        // -D_lambda(a) theta^i_{p-lambda} ^ omega - a theta^i_p ^ omega.
        const std::size_t lambda = last_direction(p);
        const MultiIndex q = p.remove_direction(lambda);
        momentum.add({i, q, lambda}, a);
        auto &target = residual[{q, i}];
        target -= total_derivative(a, lambda);
        if (target.is_zero()) {
            residual.erase({q, i});
        }
    }
    SourceForm source(spec);
    for (const auto &[key, e] : residual) {
        source.components[key.second] = e;
    }
    return {std::move(source), std::move(momentum)};
}

SourceForm euler_lagrange(const Lagrangian &lagrangian)
{
    return kolar_decompose(lagrangian.spec, d_v(lagrangian.to_form())).source;
}

Momentum momentum_natural_r1(const JetSpec &spec, const Form &alpha)
{
    Momentum out{spec, {}};
    const MultiIndex zero(spec.n());
    for (const auto &[key, a] : top_contact_coefficients(spec, alpha)) {
        const auto &[i, p] = key;
        if (p.degree() > 1) {
            throw shape_error("natural momentum needs contact factors of order <= 1");
        }
        if (p.degree() == 1) {
            out.add({i, zero, last_direction(p)}, a);
        }
    }
    return out;
}

Momentum momentum_quasisymmetric_r2(const JetSpec &spec, const Form &alpha)
{
    Momentum out{spec, {}};
    const std::size_t n = spec.n();
    const MultiIndex zero(n);
    for (const auto &[key, a] : top_contact_coefficients(spec, alpha)) {
        const auto &[i, p] = key;
        switch (p.degree()) {
        case 0:
            break;
        case 1:
            out.add({i, zero, last_direction(p)}, a);
            break;
        case 2:
            // Symmetric tensor alpha^{lambda mu}: an off-diagonal multi-index is hit by two ordered pairs.
            for (std::size_t lambda = 0; lambda < n; ++lambda) {
                for (std::size_t mu = 0; mu < n; ++mu) {
                    if (MultiIndex::unit(n, lambda) + MultiIndex::unit(n, mu) != p) {
                        continue;
                    }
                    const Expr sym = lambda == mu ? a : Rational(1, 2) * a;
                    out.add({i, MultiIndex::unit(n, mu), lambda}, sym);
                    out.add({i, zero, lambda}, -total_derivative(sym, mu));
                }
            }
            break;
        default:
            throw shape_error("quasisymmetric momentum needs contact factors of order <= 2");
        }
    }
    return out;
}

Form quasisymmetry_map(const Momentum &p)
{
    const JetSpec &spec = p.spec;
    const std::size_t n = spec.n();
    Form out(n >= 1 ? static_cast<std::uint32_t>(n - 1) : 0u);
    const MultiIndex zero(n);
    for (const auto &[key, c] : p.coefficients) {
        if (key.q.degree() != 1) {
            continue;
        }
        const std::size_t lambda = last_direction(key.q);
        out += c * wedge(Form::theta(key.i, zero), volume_minor(spec, key.lambda, lambda));
    }
    return out;
}

SecondVariation second_variation(const JetSpec &spec, const Form &beta)
{
    const std::size_t n = spec.n();
    // beta^p_{ij}, keyed by (p, i, j).
    std::map<HelmholtzKey, Expr> b;
    if (!beta.is_zero() && beta.degree() != n + 2) {
        throw shape_error("expected a form of degree n+2 = " + std::to_string(n + 2));
    }
    for (const auto &[w, c] : beta.terms()) {
        if (contact_degree(w) != 2) {
            throw shape_error("expected a 2-contact form theta ^ theta ^ omega");
        }
        const auto &first = w[0];
        const auto &second = w[1];
        check_component(spec, first.index());
        check_component(spec, second.index());
        if (second.multi_index().is_zero()) {
            b[{first.multi_index(), first.index(), second.index()}] += c;
        } else if (first.multi_index().is_zero()) {
            b[{second.multi_index(), second.index(), first.index()}] -= c;
        } else {
            throw shape_error("each term needs one contact factor of order zero");
        }
    }
    std::uint32_t top = 0;
    for (const auto &[key, c] : b) {
        top = std::max({top, key.p.degree(), c.order()});
    }

    HelmholtzTensor tensor{spec, {}};
    for (std::size_t i = 0; i < spec.m(); ++i) {
        for (std::size_t j = 0; j < spec.m(); ++j) {
            for (const auto &p : enumerate_upto(n, top)) {
                Expr tilde;
                if (auto it = b.find({p, i, j}); it != b.end()) {
                    tilde += it->second;
                }
                for (const auto &q : enumerate_upto(n, top - p.degree())) {
                    auto it = b.find({p + q, j, i});
                    if (it == b.end()) {
                        continue;
                    }
                    Rational coeff(multinomial(p, q) * parity_sign((p + q).degree()));
                    tilde -= coeff * iterated_total(it->second, q);
                }
                Expr h = Rational(1, 2) * tilde;
                if (!h.is_zero()) {
                    tensor.components.emplace(HelmholtzKey{p, i, j}, std::move(h));
                }
            }
        }
    }
    antisymmetrize_zero_block(tensor);
    Form hform = tensor.to_form();
    Form residual = hform - beta;
    return {std::move(tensor), std::move(hform), std::move(residual)};
}

HelmholtzTensor helmholtz(const SourceForm &source)
{
    const JetSpec &spec = source.spec;
    const std::uint32_t r = source.order();
    HelmholtzTensor out{spec, {}};
    for (std::size_t i = 0; i < spec.m(); ++i) {
        for (std::size_t j = 0; j < spec.m(); ++j) {
            for (const auto &p : enumerate_upto(spec.n(), r)) {
                Expr h = partial(source.components[j], yc(i, p));
                for (const auto &q : enumerate_upto(spec.n(), r - p.degree())) {
                    const Expr d = partial(source.components[i], yc(j, p + q));
                    if (d.is_zero()) {
                        continue;
                    }
                    Rational coeff(multinomial(p, q) * parity_sign((p + q).degree()));
                    h -= coeff * iterated_total(d, q);
                }
                h *= Rational(1, 2);
                if (!h.is_zero()) {
                    out.components.emplace(HelmholtzKey{p, i, j}, std::move(h));
                }
            }
        }
    }
    antisymmetrize_zero_block(out);
    return out;
}

bool is_locally_variational(const SourceForm &source)
{
    return helmholtz(source).is_zero();
}

} // namespace jetvar
