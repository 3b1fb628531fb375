#include <doctest.h>

#include <jetvar/forms.hpp>

#include "test_support.hpp"

using namespace jetvar;

namespace
{

const JetSpec line(1, 1);
const JetSpec plane(2, 1);

Expr u(std::uint32_t k) { return Expr::field(0, MultiIndex{k}); }
Form th(std::uint32_t k) { return Form::theta(0, MultiIndex{k}); }
const Form dx = Form::dx(0);

} // namespace

TEST_CASE("wedge")
{
    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(th(0), dx) == -wedge(dx, th(0)));
    CHECK(wedge(u(0) * th(0), u(1) * dx) == (u(0) * u(1)) * wedge(th(0), dx));

    testing::Generator gen(21);
    for (int trial = 0; trial < 50; ++trial) {
        JetSpec spec(2, 2);
        const auto da = static_cast<std::uint32_t>(gen.uniform(0, 2));
        const auto db = static_cast<std::uint32_t>(gen.uniform(0, 2));
        auto a = gen.form(spec, da, 1);
        auto b = gen.form(spec, db, 1);
        Form ba = wedge(b, a);
        if ((da * db) % 2 == 1) {
            ba = -ba;
        }
        CHECK(wedge(a, b) == ba);
    }
}

TEST_CASE("from_holonomic")
{
    CHECK(from_holonomic(line, 0, MultiIndex{0}) == th(0) + u(1) * dx);
    CHECK(from_holonomic(line, 0, MultiIndex{1}) == th(1) + u(2) * dx);
    const Form expected = Form::theta(0, MultiIndex{0, 0}) + Expr::field(0, MultiIndex{1, 0}) * Form::dx(0)
                          + Expr::field(0, MultiIndex{0, 1}) * Form::dx(1);
    CHECK(from_holonomic(plane, 0, MultiIndex{0, 0}) == expected);
    CHECK_THROWS_AS((from_holonomic(line, 1, MultiIndex{0})), index_error);
}

TEST_CASE("contact_split")
{
    const Form a = wedge(th(0), dx) + u(0) * wedge(th(0), th(1));
    auto parts = contact_split(a);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == 1);
    CHECK(parts[0].second == wedge(th(0), dx));
    CHECK(parts[1].first == 2);
    CHECK(parts[1].second == u(0) * wedge(th(0), th(1)));

    auto flat = contact_split(wedge(Form::dx(0), Form::dx(1)));
    REQUIRE(flat.size() == 1);
    CHECK(flat[0].first == 0);

    // du ^ dx = theta ^ dx; the horizontal piece u_x dx ^ dx vanishes.
    auto du_dx = contact_split(wedge(from_holonomic(line, 0, MultiIndex{0}), dx));
    REQUIRE(du_dx.size() == 1);
    CHECK(du_dx[0].first == 1);
    CHECK(du_dx[0].second == wedge(th(0), dx));

    CHECK(contact_split(Form(2)).empty());
}

TEST_CASE("horizontalize and vertical")
{
    const Form du = from_holonomic(line, 0, MultiIndex{0});
    CHECK(horizontalize(line, du) == u(1) * dx);
    CHECK(horizontalize(line, dx) == dx);
    CHECK(horizontalize(line, wedge(du, dx)) == wedge(th(0), dx));

    CHECK(vertical(line, du) == th(0));
    CHECK(vertical(line, dx).is_zero());
    // Degree 2 > n: h keeps the 1-contact part, which is all of u_x du ^ dx.
    const Form a = u(1) * wedge(du, dx);
    CHECK(horizontalize(line, a) == u(1) * wedge(th(0), dx));
    CHECK(vertical(line, a).is_zero());
}

TEST_CASE("exterior derivative examples")
{
    CHECK(exterior_d(line, Form(u(0))) == th(0) + u(1) * dx);
    CHECK(exterior_d(line, th(0)) == -wedge(th(1), dx));
    CHECK(exterior_d(line, u(1) * dx) == wedge(th(1), dx));

    CHECK(d_h(line, Form(u(0))) == u(1) * dx);
    CHECK(d_v(Form(u(0))) == th(0));
    const Expr x = Expr::base(0);
    CHECK(d_h(line, Form(x * u(0))) == (u(0) + x * u(1)) * dx);
    CHECK(d_v(u(1) * dx) == wedge(th(1), dx));
}

TEST_CASE("is_contact")
{
    CHECK(is_contact(line, wedge(th(0), dx)));
    CHECK(is_contact(line, u(0) * th(0)));
    CHECK_FALSE(is_contact(line, u(1) * dx));
    CHECK(is_contact(line, Form(1)));
}

TEST_CASE("volume minors")
{
    const Form omega = volume(plane);
    for (std::size_t l = 0; l < 2; ++l) {
        for (std::size_t mu = 0; mu < 2; ++mu) {
            const Form expected = l == mu ? omega : Form(2);
            CHECK(wedge(Form::dx(mu), volume_minor(plane, l)) == expected);
        }
    }
    CHECK(volume_minor(plane, 0, 1) == -volume_minor(plane, 1, 0));
    CHECK(volume_minor(line, 0) == Form(Expr(1)));
}

TEST_CASE("differential identities on random forms")
{
    testing::Generator gen(22);
    for (int trial = 0; trial < 120; ++trial) {
        JetSpec spec(static_cast<std::size_t>(gen.uniform(1, 2)), static_cast<std::size_t>(gen.uniform(1, 2)));
        const auto k = static_cast<std::uint32_t>(gen.uniform(0, static_cast<int>(spec.n()) + 1));
        const Form a = gen.form(spec, k, 2);
        CHECK(exterior_d(spec, exterior_d(spec, a)).is_zero());
        CHECK(d_h(spec, d_h(spec, a)).is_zero());
        CHECK(d_v(d_v(a)).is_zero());
        CHECK((d_h(spec, d_v(a)) + d_v(d_h(spec, a))).is_zero());

        Form sum(a.degree());
        for (const auto &[c, part] : contact_split(a)) {
            sum += part;
        }
        CHECK(sum == a);
        const Form h = horizontalize(spec, a);
        CHECK(horizontalize(spec, h) == h);
        CHECK(horizontalize(spec, vertical(spec, a)).is_zero());
    }
}

TEST_CASE("contact forms pull back to zero along prolonged sections")
{
    // theta^i_p evaluated on the tangent of j s is d(d_p s) - d_{p+lambda} s dx^lambda = 0,
    // so along j s each theta coefficient in the holonomic expansion cancels.
    testing::Generator gen(23);
    for (int trial = 0; trial < 30; ++trial) {
        JetSpec spec(1, 1);
        Expr s;
        for (std::uint32_t k = 0; k <= 4; ++k) {
            s += gen.coefficient() * pow(Expr::base(0), k);
        }
        const auto p = MultiIndex{static_cast<std::uint32_t>(gen.uniform(0, 2))};
        // theta = dy_p - y_{p+1} dx; pull back: d(s^(p))/dx - s^(p+1) as the dx coefficient.
        const Expr dyp = testing::section_derivative(s, p.add_direction(0));
        const Expr along = testing::pull_back_along(Expr::field(0, p.add_direction(0)), {s});
        CHECK((dyp - along).is_zero());
        // d_v of a horizontal form is contact.
        const Form a = gen.expr(spec, 2) * dx;
        CHECK(is_contact(spec, d_v(a)));
    }
}
