#include "doctest.h"

#include "closelp/curve.hpp"

#include <cmath>

using namespace closelp;

namespace {

std::vector<cplx> sample(int n, auto f)
{
    std::vector<cplx> v(n);
    for (int j = 0; j < n; ++j)
        v[j] = f(2.0 * pi * j / n);
    return v;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b)
{
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace

TEST_CASE("star nodes at s = 0 and s = pi/2")
{
    const Curve c = Curve::analytic({StarShape{0.3, 5}, {}, 8});
    CHECK(std::abs(c.nodes()[0] - cplx(1.3, 0.0)) <= 1e-15);
    CHECK(std::abs(c.nodes()[2] - I) <= 1e-15);
}

TEST_CASE("unit circle geometry")
{
    for (int n : {8, 64}) {
        const Curve c = Curve::analytic({EllipseShape{1.0, 1.0}, {}, n});
        for (int j = 0; j < n; ++j) {
            CHECK(c.curvature()[j] == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(c.normals()[j] - c.nodes()[j]) <= 1e-14);
            CHECK(c.speed()[j] == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(c.weights()[j] == doctest::Approx(2.0 * pi / n).epsilon(1e-14));
            CHECK(std::abs(c.line_elements()[j] - I * c.normals()[j] * c.weights()[j]) <= 1e-15);
        }
        CHECK(c.perimeter() == doctest::Approx(2.0 * pi).epsilon(1e-14));
    }
}

TEST_CASE("ellipse curvature at the end of the major axis")
{
    const Curve c = Curve::analytic({EllipseShape{2.0, 1.0}, {}, 32});
    CHECK(c.curvature()[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(c.curvature()[8] == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("sample-only curvature of the star matches the polar formula")
{
    const int n = 256;
    const auto z = sample(n, [](double s) { return (1.0 + 0.3 * std::cos(5 * s)) * std::exp(I * s); });
    const GeometricData g = geometric_data(z);
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
        const double s = 2.0 * pi * j / n;
        const double r = 1.0 + 0.3 * std::cos(5 * s);
        const double dr = -1.5 * std::sin(5 * s);
        const double ddr = -7.5 * std::cos(5 * s);
        const double k = (r * r + 2 * dr * dr - r * ddr) / std::pow(r * r + dr * dr, 1.5);
        err = std::max(err, std::abs(g.curvature[j] - k));
    }
    CHECK(err <= 1e-12);
}

TEST_CASE("from_samples agrees with the analytic construction")
{
    const CurveSpec spec{EllipseShape{1.5, 0.7}, {cplx(0.2, -0.1), 0.4, 1.0}, 128};
    const Curve a = Curve::analytic(spec);
    const Curve b = Curve::from_samples(a.nodes());
    CHECK(max_diff(a.normals(), b.normals()) <= 1e-13);
    CHECK(max_diff(a.d_nodes(), b.d_nodes()) <= 1e-12);
    CHECK(std::abs(a.perimeter() - b.perimeter()) <= 1e-13);
}

TEST_CASE("normals point outward")
{
    const Curve c = Curve::analytic({StarShape{}, {}, 64});
    for (int j = 0; j < c.size(); ++j) {
        CHECK(c.side_of(c.nodes()[j] + 1e-3 * c.normals()[j]) == Side::exterior);
        CHECK(c.side_of(c.nodes()[j] - 1e-3 * c.normals()[j]) == Side::interior);
    }
}

TEST_CASE("invalid curves are rejected")
{
    CHECK_THROWS_AS(Curve::analytic({StarShape{}, {}, 7}), InvalidArgument);
    CHECK_THROWS_AS(Curve::analytic({StarShape{}, {}, 6}), InvalidArgument);
    CHECK_THROWS_AS(Curve::analytic({EllipseShape{1.0, -1.0}, {}, 16}), InvalidArgument);
    auto cw = sample(16, [](double s) { return std::exp(-I * s); });
    CHECK_THROWS_AS(Curve::from_samples(cw), InvalidArgument);
}

TEST_CASE("projection finds the closest point")
{
    const Curve c = Curve::analytic({EllipseShape{2.0, 1.0}, {}, 64});
    const CurveProjection p = c.project(cplx(2.5, 0.0));
    CHECK(p.distance == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.side == Side::exterior);
    CHECK(c.project(cplx(0.0, 0.9)).side == Side::interior);
}

TEST_CASE("spectral derivative")
{
    const auto c = sample(8, [](double s) { return cplx(7.0, -2.0) + 0.0 * s; });
    for (const cplx& v : spectral_derivative(c))
        CHECK(std::abs(v) <= 1e-14);

    const auto f = sample(8, [](double s) { return cplx(std::cos(s)); });
    const auto df = sample(8, [](double s) { return cplx(-std::sin(s)); });
    CHECK(max_diff(spectral_derivative(f), df) <= 1e-14);

    const auto e = sample(16, [](double s) { return std::exp(I * s); });
    const auto de = sample(16, [](double s) { return I * std::exp(I * s); });
    CHECK(max_diff(spectral_derivative(e), de) <= 1e-14);

    const auto d2 = sample(16, [](double s) { return -std::exp(I * s); });
    CHECK(max_diff(spectral_derivative(e, 2), d2) <= 1e-14);

    std::vector<double> r(8);
    for (int j = 0; j < 8; ++j)
        r[j] = std::sin(2.0 * 2.0 * pi * j / 8);
    const auto dr = spectral_derivative(std::span<const double>(r));
    for (int j = 0; j < 8; ++j)
        CHECK(dr[j] == doctest::Approx(2.0 * std::cos(2.0 * 2.0 * pi * j / 8)).epsilon(1e-14));

    CHECK_THROWS_AS(spectral_derivative(std::vector<cplx>(7, 1.0)), InvalidArgument);
}

TEST_CASE("resampling")
{
    CHECK(upsampled_size(10, 2.2) == 22);
    CHECK(upsampled_size(64, 2.2) == 142);
    CHECK(upsampled_size(16, 1.5) == 24);

    const auto k = resample(std::vector<cplx>(10, cplx(3.0, 1.0)), 2.2);
    REQUIRE(k.size() == 22);
    for (const cplx& v : k)
        CHECK(std::abs(v - cplx(3.0, 1.0)) <= 1e-14);

    const auto c = resample(sample(8, [](double s) { return cplx(std::cos(s)); }), 2.0);
    CHECK(max_diff(c, sample(16, [](double s) { return cplx(std::cos(s)); })) <= 1e-14);

    const auto e = resample(sample(16, [](double s) { return std::exp(3.0 * I * s); }), 1.5);
    CHECK(max_diff(e, sample(24, [](double s) { return std::exp(3.0 * I * s); })) <= 1e-14);

    // round trip through a finer grid
    const auto f = sample(32, [](double s) { return std::exp(std::sin(s)) * std::exp(I * s); });
    const auto back = resample_to(resample_to(f, 96), 32);
    CHECK(max_diff(f, back) <= 1e-14);

    CHECK_THROWS_AS(resample(f, 1.0), InvalidArgument);
}

TEST_CASE("trigonometric interpolant")
{
    const auto f = sample(16, [](double s) { return std::exp(2.0 * I * s) + std::cos(s); });
    const TrigInterpolant t(f);
    for (double s : {0.1, 1.7, 4.0}) {
        CHECK(std::abs(t(s) - (std::exp(2.0 * I * s) + std::cos(s))) <= 1e-14);
        CHECK(std::abs(t(s, 1) - (2.0 * I * std::exp(2.0 * I * s) - std::sin(s))) <= 1e-13);
    }
}
