#include "doctest.h"

#include "closelp/experiments.hpp"
#include "closelp/stokes.hpp"

#include <cmath>
#include <random>

using namespace closelp;

namespace {

Curve star(int n) { return Curve::analytic({StarShape{0.3, 5}, {}, n}); }

std::vector<cplx> density(const Curve& c, auto f)
{
    std::vector<cplx> v(c.size());
    for (int j = 0; j < c.size(); ++j)
        v[j] = f(c.param(j));
    return v;
}

cplx smooth_sigma(double s) { return cplx(std::cos(s) + 0.2, 0.5 * std::sin(2.0 * s)); }

} // namespace

TEST_CASE("complex density split")
{
    const std::vector<cplx> s{cplx(3.0, 4.0)};
    auto [a, b] = complex_density_split(s, std::vector<cplx>{1.0});
    CHECK(std::abs(a[0] - cplx(3.0, 4.0)) <= 1e-15);
    CHECK(std::abs(b[0]) <= 1e-15);
    auto [c, d] = complex_density_split(s, std::vector<cplx>{I});
    CHECK(std::abs(c[0]) <= 1e-15);
    CHECK(std::abs(d[0] - cplx(4.0, -3.0)) <= 1e-15);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> sig(50), nrm(50);
    for (int j = 0; j < 50; ++j) {
        sig[j] = cplx(u(rng), u(rng));
        nrm[j] = std::exp(I * (pi * u(rng)));
    }
    auto [t1, t2] = complex_density_split(sig, nrm);
    for (int j = 0; j < 50; ++j) {
        CHECK(std::abs(t1[j] * nrm[j] - sig[j] * nrm[j].real()) <= 1e-15);
        CHECK(std::abs(t2[j] * nrm[j] - sig[j] * nrm[j].imag()) <= 1e-15);
    }
    CHECK_THROWS_AS(complex_density_split(sig, std::vector<cplx>(3, 1.0)), InvalidArgument);
}

TEST_CASE("zero density gives zero velocity")
{
    const Curve c = star(64);
    const std::vector<cplx> zero(64, 0.0);
    const std::vector<cplx> x{0.0, c.nodes()[3] * 0.999};
    for (const cplx& u : stokes_slp_eval(c, zero, x, Side::interior))
        CHECK(std::abs(u) <= 1e-15);
    for (const cplx& u : stokes_dlp_eval(c, zero, x, Side::interior))
        CHECK(std::abs(u) <= 1e-15);
}

TEST_CASE("double layer of a constant density")
{
    const cplx s0(0.7, -0.4);
    // the constant itself, from a fine trapezoid rule at one far interior point
    const Curve fine = star(4096);
    const std::vector<cplx> sf(4096, s0);
    const std::vector<cplx> x0{cplx(0.05, 0.02)};
    const cplx inside = stokes_dlp_native(fine, sf, x0)[0];
    CHECK(std::abs(inside + s0) <= 1e-12);

    const Curve c = star(300);
    const std::vector<cplx> s(300, s0);
    std::vector<cplx> xi, xe;
    for (int j : {0, 33, 120}) {
        for (double d : {0.0, 1e-14, 1e-10, 1e-6, 1e-3, 1e-1}) {
            xi.push_back(c.nodes()[j] - d * c.normals()[j]);
            xe.push_back(c.nodes()[j] + d * c.normals()[j]);
        }
    }
    for (const cplx& u : stokes_dlp_eval(c, s, xi, Side::interior))
        CHECK(std::abs(u - inside) <= 1e-11);
    for (const cplx& u : stokes_dlp_eval(c, s, xe, Side::exterior))
        CHECK(std::abs(u) <= 1e-11);
}

TEST_CASE("close evaluation matches the trapezoid rule away from the curve")
{
    const Curve c = star(256);
    const auto s = density(c, smooth_sigma);
    const std::vector<cplx> xi{0.0, cplx(0.2, -0.1)};
    const std::vector<cplx> xe{cplx(2.5, 0.3), cplx(-1.0, -2.0)};
    const auto a = stokes_slp_eval(c, s, xi, Side::interior);
    const auto b = stokes_slp_native(c, s, xi);
    const auto e = stokes_slp_eval(c, s, xe, Side::exterior);
    const auto f = stokes_slp_native(c, s, xe);
    const auto g = stokes_dlp_eval(c, s, xi, Side::interior);
    const auto h = stokes_dlp_native(c, s, xi);
    const auto p = stokes_dlp_eval(c, s, xe, Side::exterior);
    const auto q = stokes_dlp_native(c, s, xe);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(std::abs(a[k] - b[k]) <= 1e-12);
        CHECK(std::abs(e[k] - f[k]) <= 1e-12);
        CHECK(std::abs(g[k] - h[k]) <= 1e-12);
        CHECK(std::abs(p[k] - q[k]) <= 1e-12);
    }
}

TEST_CASE("single layer near the curve against graded Gauss-Legendre")
{
    const CurveSpec spec{EllipseShape{1.0, 2.0}, {}, 128};
    const Curve c = Curve::analytic(spec);
    const auto sig = [](double s) { return cplx(std::cos(s), 1.0 + 0.5 * std::sin(s)); };
    const auto s = density(c, sig);
    std::vector<cplx> xe, xi;
    for (int j : {0, 9, 40}) {
        xe.push_back(c.nodes()[j] + 1e-3 * c.normals()[j]);
        xi.push_back(c.point_at(c.param(j) + 0.01) - 1e-4 * c.normals()[j]);
    }
    const auto ue = stokes_slp_eval(c, s, xe, Side::exterior);
    const auto ui = stokes_slp_eval(c, s, xi, Side::interior);
    for (std::size_t k = 0; k < xe.size(); ++k) {
        CHECK(std::abs(ue[k] - stokes_slp_oracle(spec, sig, xe[k])) <= 1e-12);
        CHECK(std::abs(ui[k] - stokes_slp_oracle(spec, sig, xi[k])) <= 1e-12);
    }
}

TEST_CASE("velocity fields are divergence free")
{
    const Curve c = star(200);
    const auto s = density(c, smooth_sigma);
    const double h = 1e-5;
    for (const Side side : {Side::interior, Side::exterior}) {
        const cplx x0 = side == Side::interior ? c.nodes()[25] * 0.98 : c.nodes()[25] * 1.02;
        const std::vector<cplx> x{x0 + h, x0 - h, x0 + I * h, x0 - I * h};
        for (int which = 0; which < 2; ++which) {
            const auto u = which ? stokes_dlp_eval(c, s, x, side) : stokes_slp_eval(c, s, x, side);
            const double div = (u[0].real() - u[1].real() + u[2].imag() - u[3].imag()) / (2 * h);
            CHECK(std::abs(div) <= 1e-7);
        }
    }
}

TEST_CASE("Stokes jump relations at straddling points")
{
    const Curve c = star(400);
    const auto s = density(c, smooth_sigma);
    std::vector<cplx> xi, xe, sy;
    for (double t : {0.3, 2.0, 5.1}) {
        const cplx y = c.point_at(t);
        const cplx n = -I * c.point_at(t, 1) / std::abs(c.point_at(t, 1));
        xi.push_back(y - 1e-12 * n);
        xe.push_back(y + 1e-12 * n);
        sy.push_back(smooth_sigma(t));
    }
    const auto si = stokes_slp_eval(c, s, xi, Side::interior);
    const auto se = stokes_slp_eval(c, s, xe, Side::exterior);
    const auto di = stokes_dlp_eval(c, s, xi, Side::interior);
    const auto de = stokes_dlp_eval(c, s, xe, Side::exterior);
    for (std::size_t k = 0; k < xi.size(); ++k) {
        CHECK(std::abs(se[k] - si[k]) <= 1e-10);
        CHECK(std::abs(de[k] - di[k] - sy[k]) <= 1e-10);
    }
}
