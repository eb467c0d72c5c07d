// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "closelp/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace closelp;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void add(const Check& c)
    {
        pass = pass && c.pass;
        if (!detail.empty())
            detail += "; ";
        detail += (c.pass ? "" : "[fail] ") + c.name + ": " + c.detail;
    }
};

std::string sci(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > limit_s)
        o.add({"runtime < " + sci(limit_s) + " s", false, sci(dt) + " s"});
    if (!o.pass)
        ++failures;
    std::printf("%s criterion %d (%s) [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", id, title, dt,
                o.detail.c_str());
    std::fflush(stdout);
}

// ---- criterion 9 probes ----------------------------------------------------

Check weight_sum_identity()
{
    double worst = 0.0;
    for (int n = 8; n <= 1024; n *= 2) {
        const auto w = product_quad_weights(n);
        cplx s = 0.0;
        for (const cplx& r : w.r)
            s += r;
        worst = std::max(worst, std::abs(s - 2.0 * pi / n));
    }
    return {"sum_j R_j = 2pi/N, N=8..1024", worst <= 1e-14, "max deviation " + sci(worst)};
}

Check dlp_constant_identity()
{
    const Curve c = Curve::analytic({StarShape{}, {}, 200});
    const std::vector<double> one(200, 1.0);
    std::vector<cplx> xi, xe;
    for (int j = 0; j < 200; j += 13)
        for (double d : {1e-15, 1e-13, 1e-11, 1e-9, 1e-7, 1e-5, 1e-3, 1e-1}) {
            xi.push_back(c.nodes()[j] - d * c.normals()[j]);
            xe.push_back(c.nodes()[j] + d * c.normals()[j]);
        }
    const auto ri = laplace_dlp_eval(c, one, xi, Side::interior);
    const auto re = laplace_dlp_eval(c, one, xe, Side::exterior);
    double e = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k)
        e = std::max({e, std::abs(ri.u[k] + 1.0), std::abs(re.u[k])});
    return {"DLP tau=1 gives -1 inside, 0 outside", e <= 1e-12, sci(e)};
}

Check jump_relations()
{
    const Curve c = Curve::analytic({StarShape{}, {}, 400});
    std::vector<double> tau(400);
    std::vector<cplx> sig(400);
    for (int j = 0; j < 400; ++j) {
        const double s = c.param(j);
        tau[j] = 0.5 + std::sin(2.0 * s);
        sig[j] = cplx(std::cos(s) + 0.2, 0.5 * std::sin(2.0 * s));
    }
    std::vector<cplx> xi, xe, ty, sy;
    for (double s = 0.05; s < 2.0 * pi; s += 0.7) {
        const cplx y = c.point_at(s), n = -I * c.point_at(s, 1) / std::abs(c.point_at(s, 1));
        xi.push_back(y - 1e-12 * n);
        xe.push_back(y + 1e-12 * n);
        ty.push_back(0.5 + std::sin(2.0 * s));
        sy.push_back(cplx(std::cos(s) + 0.2, 0.5 * std::sin(2.0 * s)));
    }
    const auto si = laplace_slp_eval(c, tau, xi, Side::interior).u;
    const auto se = laplace_slp_eval(c, tau, xe, Side::exterior).u;
    const auto di = laplace_dlp_eval(c, tau, xi, Side::interior).u;
    const auto de = laplace_dlp_eval(c, tau, xe, Side::exterior).u;
    const auto ssi = stokes_slp_eval(c, sig, xi, Side::interior);
    const auto sse = stokes_slp_eval(c, sig, xe, Side::exterior);
    const auto sdi = stokes_dlp_eval(c, sig, xi, Side::interior);
    const auto sde = stokes_dlp_eval(c, sig, xe, Side::exterior);
    double e = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k)
        e = std::max({e, std::abs(se[k] - si[k]), std::abs(de[k] - di[k] - ty[k]),
                      std::abs(sse[k] - ssi[k]), std::abs(sde[k] - sdi[k] - sy[k])});
    return {"SLP continuity / DLP jump at straddling points", e <= 1e-10, sci(e)};
}

Check finite_difference_probes()
{
    const Curve c = Curve::analytic({StarShape{}, {}, 200});
    std::vector<double> tau(200);
    std::vector<cplx> sig(200);
    for (int j = 0; j < 200; ++j) {
        const double s = c.param(j);
        tau[j] = std::cos(s) + 0.3 * std::sin(4.0 * s);
        sig[j] = cplx(std::cos(s) + 0.2, 0.5 * std::sin(2.0 * s));
    }
    const double h = 5e-4, hd = 1e-5;
    double lap = 0.0, div = 0.0;
    for (int j : {10, 77, 150}) {
        for (const Side side : {Side::interior, Side::exterior}) {
            const cplx x0 = c.nodes()[j] * (side == Side::interior ? 0.98 : 1.02);
            // fourth-order stencil; the second-order one is truncation bound here
            std::vector<cplx> x{x0};
            for (const cplx d : {cplx(1.0), I})
                for (const double k : {1.0, -1.0, 2.0, -2.0})
                    x.push_back(x0 + k * h * d);
            for (int which = 0; which < 2; ++which) {
                const auto u = which ? laplace_dlp_eval(c, tau, x, side).u
                                     : laplace_slp_eval(c, tau, x, side).u;
                double l = -60.0 * u[0];
                for (int a = 0; a < 2; ++a)
                    l += 16.0 * (u[1 + 4 * a] + u[2 + 4 * a]) - (u[3 + 4 * a] + u[4 + 4 * a]);
                lap = std::max(lap, std::abs(l) / (12.0 * h * h));
            }
            const std::vector<cplx> y{x0 + hd, x0 - hd, x0 + I * hd, x0 - I * hd};
            for (int which = 0; which < 2; ++which) {
                const auto v = which ? stokes_dlp_eval(c, sig, y, side) : stokes_slp_eval(c, sig, y, side);
                div = std::max(div, std::abs(v[0].real() - v[1].real() + v[2].imag() - v[3].imag()) /
                                        (2.0 * hd));
            }
        }
    }
    return {"FD Laplacian <= 1e-6, FD divergence <= 1e-7", lap <= 1e-6 && div <= 1e-7,
            sci(lap) + " / " + sci(div)};
}

Check barycentric_exactness()
{
    const Curve c = Curve::analytic({StarShape{}, {}, 200});
    const ExteriorAnchor a(c, cplx(-0.1, 0.0));
    std::vector<cplx> xi, xe;
    for (int j = 0; j < 200; j += 17)
        for (double d : {0.0, 1e-15, 1e-10, 1e-5, 1e-2, 0.5}) {
            xi.push_back(c.nodes()[j] - d * c.normals()[j]);
            xe.push_back(c.nodes()[j] + d * c.normals()[j]);
        }
    const cplx k(0.3, -2.0);
    const std::vector<cplx> vc(200, k);
    std::vector<cplx> vp(200);
    for (int j = 0; j < 200; ++j)
        vp[j] = 1.0 / (c.nodes()[j] - a.point());
    const auto ci = cauchy_value_interior(c, vc, TargetBatch::make(c, xi, Side::interior));
    const auto ce = cauchy_value_exterior(c, vp, TargetBatch::make(c, xe, Side::exterior), a);
    double e = 0.0;
    for (std::size_t t = 0; t < xi.size(); ++t) {
        e = std::max(e, std::abs(ci[t] - k));
        const cplx ex = 1.0 / (xe[t] - a.point());
        e = std::max(e, std::abs(ce[t] - ex) / std::abs(ex));
    }
    return {"barycentric v=c and v=1/(x-a) exact", e <= 1e-14, sci(e)};
}

} // namespace

int main()
{
    std::vector<CauchySweepRow> cauchy;
    criterion(1, "Cauchy value, N=200 sweep", 1.0, [&] {
        CauchyTestConfig cfg;
        cfg.ns = {200};
        cauchy = run_cauchy_test(cfg);
        Outcome o;
        o.add(check_cauchy(cauchy, 200)[0]);
        return o;
    });
    criterion(2, "Cauchy stabilized derivative", 1.0, [&] {
        CauchyTestConfig cfg;
        cfg.ns = {200};
        const auto checks = check_cauchy(run_cauchy_test(cfg), 200);
        Outcome o;
        o.add(checks[1]);
        o.add(checks[2]);
        return o;
    });
    criterion(3, "Laplace table at N=250", 120.0, [] {
        LaplaceTableConfig cfg;
        cfg.ns = {250};
        Outcome o;
        for (const auto& c : check_laplace_table(run_laplace_table(cfg)))
            o.add(c);
        return o;
    });
    criterion(4, "exterior SLP field, N=240", 60.0, [] {
        LaplaceFieldConfig cfg;
        Outcome o;
        for (const auto& c : check_laplace_field(run_laplace_field(cfg), cfg.n))
            o.add(c);
        return o;
    });
    criterion(5, "Stokes example 1", 30.0, [] {
        StokesEx1Config cfg;
        cfg.ns = {64, 256};
        Outcome o;
        for (const auto& c : check_stokes_example1(run_stokes_example1(cfg)))
            o.add(c);
        return o;
    });
    criterion(6, "Stokes example 2", 60.0, [] {
        Outcome o;
        for (const auto& c : check_stokes_example2(run_stokes_example2({})))
            o.add(c);
        return o;
    });
    criterion(7, "Stokes BVP convergence (example 3)", 300.0, [] {
        StokesEx3Config cfg;
        cfg.ns = {100, 200, 350};
        cfg.field_n = 0;
        Outcome o;
        for (const auto& c : check_stokes_example3(run_stokes_example3(cfg)))
            o.add(c);
        return o;
    });
    criterion(8, "multibody example 4, K=6", 600.0, [] {
        Outcome o;
        for (const auto& c : check_stokes_example4(run_stokes_example4({})))
            o.add(c);
        return o;
    });
    criterion(9, "property suites", 60.0, [] {
        Outcome o;
        o.add(weight_sum_identity());
        o.add(dlp_constant_identity());
        o.add(jump_relations());
        o.add(finite_difference_probes());
        o.add(barycentric_exactness());
        return o;
    });
    std::printf("%d of 9 criteria failed\n", failures);
    return failures ? 1 : 0;
}
