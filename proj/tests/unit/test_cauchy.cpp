#include "doctest.h"

#include "closelp/cauchy.hpp"

#include <cmath>

using namespace closelp;

namespace {

Curve star(int n) { return Curve::analytic({StarShape{0.3, 5}, {}, n}); }

std::vector<cplx> on_nodes(const Curve& c, auto f)
{
    std::vector<cplx> v(c.size());
    for (int j = 0; j < c.size(); ++j)
        v[j] = f(c.nodes()[j]);
    return v;
}

// Points approaching node j along its normal from the given side.
std::vector<cplx> sweep(const Curve& c, int j, Side side)
{
    const double sgn = side == Side::interior ? -1.0 : 1.0;
    std::vector<cplx> x;
    for (double d : {0.0, 1e-16, 1e-14, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1.0})
        x.push_back(c.nodes()[j] + sgn * d * c.normals()[j]);
    return x;
}

} // namespace

TEST_CASE("interior value reproduces constants and node data")
{
    const Curve c = star(64);
    const std::vector<cplx> v(64, cplx(2.0, -3.0));
    const std::vector<cplx> x{0.0, cplx(0.3, 0.2), c.nodes()[5] * 0.999, c.nodes()[9]};
    const auto t = TargetBatch::make(c, x, Side::interior);
    for (const cplx& r : cauchy_value_interior(c, v, t))
        CHECK(std::abs(r - cplx(2.0, -3.0)) <= 1e-14);
    for (const cplx& r : cauchy_derivative_interior(c, v, t))
        CHECK(std::abs(r) <= 1e-13);

    std::vector<cplx> w(64);
    for (int j = 0; j < 64; ++j)
        w[j] = cplx(j, 1.0 / (j + 1));
    CHECK(cauchy_value_interior(c, w, t)[3] == w[9]);
}

TEST_CASE("interior derivative of v = x is exactly one")
{
    const Curve c = star(64);
    const std::vector<cplx> x{cplx(0.2, 0.1), c.nodes()[3] * (1.0 - 1e-9), c.nodes()[0] - 1e-13};
    const auto t = TargetBatch::make(c, x, Side::interior);
    for (const cplx& r : cauchy_derivative_interior(c, c.nodes(), t))
        CHECK(std::abs(r - 1.0) <= 1e-12);
}

TEST_CASE("exterior formulas are exact for the anchor pole")
{
    const Curve c = star(64);
    const ExteriorAnchor a(c, cplx(-0.1, 0.0));
    const auto v = on_nodes(c, [&](cplx y) { return 1.0 / (y - a.point()); });
    const std::vector<cplx> x{cplx(2.0, 1.0), c.nodes()[7] * (1.0 + 1e-12), c.nodes()[11]};
    const auto t = TargetBatch::make(c, x, Side::exterior);
    const auto val = cauchy_value_exterior(c, v, t, a);
    const auto der = cauchy_derivative_exterior(c, v, t, a);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const cplx ex = 1.0 / (x[k] - a.point());
        CHECK(std::abs(val[k] - ex) <= 1e-14 * std::abs(ex));
        CHECK(std::abs(der[k] + ex * ex) <= 1e-12);
    }

    const std::vector<cplx> zero(64, 0.0);
    for (const cplx& r : cauchy_derivative_exterior(c, zero, t, a))
        CHECK(r == 0.0);
}

TEST_CASE("value and derivative sweeps toward the star tip")
{
    const Curve c = star(200);
    const cplx bi(1.1, 1.0), be(0.1, 0.5);
    const auto xi = sweep(c, 0, Side::interior);
    const auto ti = TargetBatch::make(c, xi, Side::interior);
    const auto vi = on_nodes(c, [&](cplx y) { return 1.0 / (y - bi); });
    const auto val = cauchy_value_interior(c, vi, ti);
    const auto der = cauchy_derivative_interior(c, vi, ti);
    CauchyOptions plain;
    plain.stabilize = false;
    const auto raw = cauchy_derivative_interior(c, vi, ti, plain);
    for (std::size_t k = 0; k < xi.size(); ++k) {
        const cplx r = 1.0 / (xi[k] - bi);
        CHECK(std::abs(val[k] - r) <= 1e-13);
        CHECK(std::abs(der[k] + r * r) <= 1e-12);
    }
    // 1e-12 from the node: cancellation in the plain formula
    CHECK(std::abs(raw[3] + 1.0 / ((xi[3] - bi) * (xi[3] - bi))) > 1e-4);

    const ExteriorAnchor a(c, cplx(-0.1, 0.0));
    const auto xe = sweep(c, 0, Side::exterior);
    const auto te = TargetBatch::make(c, xe, Side::exterior);
    const auto ve = on_nodes(c, [&](cplx y) { return 1.0 / (y - be); });
    const auto vale = cauchy_value_exterior(c, ve, te, a);
    const auto dere = cauchy_derivative_exterior(c, ve, te, a);
    for (std::size_t k = 0; k < xe.size(); ++k) {
        const cplx r = 1.0 / (xe[k] - be);
        CHECK(std::abs(vale[k] - r) <= 1e-13);
        CHECK(std::abs(dere[k] + r * r) <= 1e-12);
    }
}

TEST_CASE("stabilized derivative error is flat in distance")
{
    const Curve c = star(200);
    const cplx b(1.1, 1.0);
    const auto v = on_nodes(c, [&](cplx y) { return 1.0 / (y - b); });
    const cplx y = c.nodes()[17], n = c.normals()[17];
    const std::vector<cplx> x{y - 1e-15 * n, y - 1e-2 * n};
    const auto d = cauchy_derivative_interior(c, v, TargetBatch::make(c, x, Side::interior));
    const double e0 = std::abs(d[0] + 1.0 / ((x[0] - b) * (x[0] - b)));
    const double e1 = std::abs(d[1] + 1.0 / ((x[1] - b) * (x[1] - b)));
    CHECK(e0 <= 10.0 * std::max(e1, 1e-15));
}

TEST_CASE("value error decays geometrically in N")
{
    const cplx b(1.1, 1.0);
    double prev = 1.0;
    for (int n : {40, 80, 160}) {
        const Curve c = star(n);
        const auto v = on_nodes(c, [&](cplx y) { return 1.0 / (y - b); });
        const std::vector<cplx> x{c.nodes()[n / 4] * 0.99};
        const auto r = cauchy_value_interior(c, v, TargetBatch::make(c, x, Side::interior));
        const double e = std::abs(r[0] - 1.0 / (x[0] - b));
        CHECK(e < prev);
        prev = std::max(e, 1e-16);
    }
    CHECK(prev <= 1e-13);
}

TEST_CASE("target classification and anchors")
{
    const Curve c = star(64);
    const std::vector<cplx> x{c.nodes()[4], c.nodes()[4] * (1.0 + 1e-17), cplx(0.0, 0.0)};
    const auto t = TargetBatch::make(c, x, Side::interior);
    CHECK(t.node_hit[0] == 4);
    CHECK(t.node_hit[1] == 4);
    CHECK(t.node_hit[2] == -1);
    CHECK(t.near[2].empty());

    const Curve fine = star(256);
    CHECK(std::abs(cauchy_winding(fine, cplx(0.1, 0.0)) - 1.0) <= 1e-12);
    CHECK(std::abs(cauchy_winding(fine, cplx(3.0, 0.0))) <= 1e-12);

    CHECK_THROWS_AS(ExteriorAnchor(c, cplx(3.0, 0.0)), InvalidArgument);
    CHECK_THROWS_AS(ExteriorAnchor(c, c.nodes()[0] * 0.99), InvalidArgument);
    CHECK_NOTHROW(ExteriorAnchor::centroid(c));

    const std::vector<cplx> v(64, 1.0);
    CHECK_THROWS_AS(cauchy_value_interior(c, v, TargetBatch::make(c, x, Side::exterior)),
                    InvalidArgument);
}
