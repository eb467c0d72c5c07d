#include "closelp/experiments.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace closelp {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

Curve star_curve(const StarShape& star, int n)
{
    return Curve::analytic({star, {}, n});
}

double max_of(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, x);
    return m;
}

} // namespace

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows)
{
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write " + path);
    f << "N,case,quantity,max_abs_err\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6e", r.max_abs_err);
        f << r.n << "," << r.case_name << "," << r.quantity << "," << buf << "\n";
    }
}

const ConvergenceRow* find_row(const std::vector<ConvergenceRow>& rows, int n,
                               const std::string& case_name, const std::string& quantity)
{
    for (const auto& r : rows)
        if (r.n == n && r.case_name == case_name && r.quantity == quantity)
            return &r;
    return nullptr;
}

Check missing(std::string name, int n)
{
    return {std::move(name), false, "N=" + std::to_string(n) + " not in this run", true};
}

FieldErrors bvp_field_errors(const BvpSpec& spec, const FieldValues& f, const ReferenceField& ref,
                             std::span<const cplx> pts)
{
    const std::size_t m = pts.size();
    const bool free_mode = spec.condition == Condition::neumann && spec.side == Side::interior;
    FieldErrors e;
    if (spec.equation == Equation::laplace) {
        std::vector<double> du(m);
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t i = 0; i < m; ++i) {
            du[i] = f.u[i] - ref.u(pts[i]);
            lo = std::min(lo, du[i]);
            hi = std::max(hi, du[i]);
        }
        // Minimax constant.
        const double shift = free_mode && m > 0 ? 0.5 * (lo + hi) : 0.0;
        e.u.resize(m);
        e.grad.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            e.u[i] = std::abs(du[i] - shift);
            e.grad[i] = std::abs(f.gradient[i] - ref.gradient(pts[i]));
        }
        return e;
    }
    std::vector<cplx> dv(m);
    for (std::size_t i = 0; i < m; ++i)
        dv[i] = f.velocity[i] - ref.velocity(pts[i]);
    cplx c = 0.0;
    double omega = 0.0;
    if (free_mode && m > 0) {
        // Rigid motion c + omega (-y, x).
        Eigen::MatrixXd A(2 * m, 3);
        Eigen::VectorXd b(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            A.row(2 * i) << 1.0, 0.0, -pts[i].imag();
            A.row(2 * i + 1) << 0.0, 1.0, pts[i].real();
            b(2 * i) = dv[i].real();
            b(2 * i + 1) = dv[i].imag();
        }
        const Eigen::Vector3d x = A.colPivHouseholderQr().solve(b);
        c = cplx(x(0), x(1));
        omega = x(2);
    }
    e.velocity.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        e.velocity[i] = std::abs(dv[i] - c - omega * I * pts[i]);
    return e;
}

// ---- Cauchy ------------------------------------------------------------------

std::vector<CauchySweepRow> run_cauchy_test(const CauchyTestConfig& cfg)
{
    std::vector<CauchySweepRow> rows;
    for (int n : cfg.ns) {
        const Curve c = star_curve(cfg.star, n);
        const int j = ((cfg.node % n) + n) % n;
        const cplx y = c.nodes()[j], nrm = c.normals()[j];
        CauchyOptions plain;
        plain.stabilize = false;

        for (Side side : {Side::interior, Side::exterior}) {
            const bool in = side == Side::interior;
            const cplx b = in ? cfg.interior_pole : cfg.exterior_pole;
            std::vector<cplx> data(n), pts;
            for (int k = 0; k < n; ++k)
                data[k] = 1.0 / (c.nodes()[k] - b);
            for (double d : cfg.distances)
                pts.push_back(in ? y - d * nrm : y + d * nrm);
            const auto batch = TargetBatch::make(c, pts, side);
            std::vector<cplx> val, der, raw;
            if (in) {
                val = cauchy_value_interior(c, data, batch);
                der = cauchy_derivative_interior(c, data, batch);
                raw = cauchy_derivative_interior(c, data, batch, plain);
            } else {
                const ExteriorAnchor a(c, cfg.anchor);
                val = cauchy_value_exterior(c, data, batch, a);
                der = cauchy_derivative_exterior(c, data, batch, a);
                raw = cauchy_derivative_exterior(c, data, batch, a, plain);
            }
            for (std::size_t t = 0; t < pts.size(); ++t) {
                const cplx v = 1.0 / (pts[t] - b), dv = -v * v;
                const std::string cs(to_string(side));
                rows.push_back({n, cs, "value", cfg.distances[t], std::abs(val[t] - v)});
                rows.push_back({n, cs, "derivative", cfg.distances[t], std::abs(der[t] - dv)});
                rows.push_back(
                    {n, cs, "derivative_unstabilized", cfg.distances[t], std::abs(raw[t] - dv)});
            }
        }
    }
    return rows;
}

void write_cauchy_csv(const std::string& path, const std::vector<CauchySweepRow>& rows)
{
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write " + path);
    f << "N,case,quantity,max_abs_err,distance,log10_err\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%s,%s,%.6e,%.1e,%.4f\n", r.n, r.case_name.c_str(),
                      r.quantity.c_str(), r.abs_err, r.distance, log10_error(r.abs_err));
        f << buf;
    }
}

std::vector<Check> check_cauchy(const std::vector<CauchySweepRow>& rows, int n)
{
    double val = 0.0, der = 0.0, raw12 = 0.0;
    for (const auto& r : rows) {
        if (r.n != n)
            continue;
        if (r.quantity == "value")
            val = std::max(val, r.abs_err);
        if (r.quantity == "derivative")
            der = std::max(der, r.abs_err);
        if (r.quantity == "derivative_unstabilized" && r.case_name == "interior" &&
            r.distance == 1e-12)
            raw12 = r.abs_err;
    }
    return {
        {"cauchy value max error <= 1e-13", val <= 1e-13, sci(val)},
        {"cauchy stabilized derivative max error <= 1e-12", der <= 1e-12, sci(der)},
        {"unstabilized derivative error at distance 1e-12 > 1e-4", raw12 > 1e-4, sci(raw12)},
    };
}

// ---- Laplace table -------------------------------------------------------------

namespace {

struct LaplaceCaseDef {
    const char* name;
    Condition cond;
    Side side;
};

constexpr LaplaceCaseDef laplace_cases[] = {
    {"DLP_int", Condition::dirichlet, Side::interior},
    {"DLP_ext", Condition::dirichlet, Side::exterior},
    {"SLP_int", Condition::neumann, Side::interior},
    {"SLP_ext", Condition::neumann, Side::exterior},
};

struct LaplaceRun {
    BvpSpec spec;
    BvpSolution sol;
    FieldValues field;
    FieldErrors err;
};

LaplaceRun run_laplace_case(const LaplaceCaseDef& c, const Curve& curve, const ReferenceField& ref,
                            const std::vector<cplx>& pts)
{
    LaplaceRun r;
    r.spec.equation = Equation::laplace;
    r.spec.condition = c.cond;
    r.spec.side = c.side;
    r.spec.curves = {curve};
    r.spec.data = {c.cond == Condition::dirichlet ? ref.dirichlet_data(curve)
                                                  : ref.neumann_data(curve)};
    r.sol = solve_bvp(r.spec);
    r.field = evaluate_solution(r.spec, r.sol.density, pts);
    r.err = bvp_field_errors(r.spec, r.field, ref, pts);
    return r;
}

} // namespace

std::vector<ConvergenceRow> run_laplace_table(const LaplaceTableConfig& cfg)
{
    const Curve classify = star_curve(cfg.star, 256);
    const ErrorGrid gin(cfg.grid, {&classify}, Side::interior);
    const ErrorGrid gex(cfg.grid, {&classify}, Side::exterior);
    const auto pin = gin.active_points(), pex = gex.active_points();
    const auto ref_in = ReferenceField::entire();
    const auto ref_ex = ReferenceField::complex_pole({cfg.exterior_pole});

    std::vector<ConvergenceRow> rows;
    for (int n : cfg.ns) {
        const Curve curve = star_curve(cfg.star, n);
        for (const auto& c : laplace_cases) {
            const bool in = c.side == Side::interior;
            const auto r = run_laplace_case(c, curve, in ? ref_in : ref_ex, in ? pin : pex);
            rows.push_back({n, c.name, "u", max_of(r.err.u)});
            rows.push_back({n, c.name, "grad", max_of(r.err.grad)});
        }
    }
    return rows;
}

std::vector<Check> check_laplace_table(const std::vector<ConvergenceRow>& rows)
{
    // Published N=250 values; the tolerance is 10x.
    const std::map<std::pair<std::string, std::string>, double> published = {
        {{"DLP_int", "u"}, 2e-14},    {{"DLP_int", "grad"}, 1.7e-12},
        {{"DLP_ext", "u"}, 4.7e-14},  {{"DLP_ext", "grad"}, 4.6e-12},
        {{"SLP_int", "u"}, 5.9e-14},  {{"SLP_int", "grad"}, 4.5e-12},
        {{"SLP_ext", "u"}, 4.9e-15},  {{"SLP_ext", "grad"}, 6.3e-13},
    };
    std::vector<Check> out;
    for (const auto& [key, v] : published) {
        const std::string name = "N=250 " + key.first + " " + key.second + " <= " + sci(10 * v);
        const auto* r = find_row(rows, 250, key.first, key.second);
        if (!r) {
            out.push_back(missing(name, 250));
            continue;
        }
        out.push_back({name, r->max_abs_err <= 10 * v, sci(r->max_abs_err)});
    }
    return out;
}

// ---- Laplace field ---------------------------------------------------------------

LaplaceFieldResult run_laplace_field(const LaplaceFieldConfig& cfg)
{
    const Curve classify = star_curve(cfg.star, 256);
    const Curve curve = star_curve(cfg.star, cfg.n);
    ErrorGrid base(cfg.grid, {&classify}, Side::exterior);
    const auto pts = base.active_points();
    const auto ref = ReferenceField::complex_pole({cfg.exterior_pole});
    const auto r = run_laplace_case(laplace_cases[3], curve, ref, pts);
    const auto native = laplace_slp_native(curve, r.sol.density, pts);

    std::vector<double> nu(pts.size()), ng(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        nu[i] = std::abs(native.u[i] - ref.u(pts[i]));
        ng[i] = std::abs(native.gradient[i] - ref.gradient(pts[i]));
    }
    LaplaceFieldResult out{base, base, base, base, 0.0};
    out.close_u.set_errors(r.err.u);
    out.close_grad.set_errors(r.err.grad);
    out.native_u.set_errors(nu);
    out.native_grad.set_errors(ng);
    const auto& d = base.active_distance();
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (d[i] <= 5.0 / cfg.n)
            out.native_near_max = std::max(out.native_near_max, nu[i]);
    return out;
}

std::vector<Check> check_laplace_field(const LaplaceFieldResult& r, int n)
{
    const double fu = r.close_u.fraction_at_most(1e-12);
    const double fg = r.close_grad.fraction_at_most(1e-10);
    return {
        {"N=" + std::to_string(n) + " fraction of exterior points with u error <= 1e-12 >= 0.99",
         fu >= 0.99, fmt(fu)},
        {"N=" + std::to_string(n) + " fraction of exterior points with grad error <= 1e-10 >= 0.99",
         fg >= 0.99, fmt(fg)},
        {"native rule error within 5/N of the curve >= 1e-2", r.native_near_max >= 1e-2,
         sci(r.native_near_max)},
    };
}

// ---- Stokes oracles ----------------------------------------------------------------

cplx stokes_slp_oracle(const CurveSpec& curve, const std::function<cplx(double)>& sigma, cplx x)
{
    // Closest parameter: dense scan, then golden section.
    const int m = 4096;
    double sbest = 0.0, dbest = INFINITY;
    for (int i = 0; i < m; ++i) {
        const double s = 2.0 * pi * i / m;
        const double d = std::abs(evaluate_curve(curve, s).z - x);
        if (d < dbest) {
            dbest = d;
            sbest = s;
        }
    }
    {
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = sbest - 2.0 * pi / m, hi = sbest + 2.0 * pi / m;
        for (int it = 0; it < 80; ++it) {
            const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
            if (std::abs(evaluate_curve(curve, a).z - x) < std::abs(evaluate_curve(curve, b).z - x))
                hi = b;
            else
                lo = a;
        }
        sbest = 0.5 * (lo + hi);
    }

    auto integrand = [&](double s) {
        const CurvePoint p = evaluate_curve(curve, s);
        const cplx r = x - p.z;
        const double rho2 = std::norm(r);
        if (rho2 == 0.0)
            return cplx(0.0);
        const cplx sg = sigma(s);
        const double rs = r.real() * sg.real() + r.imag() * sg.imag();
        return (-0.5 * std::log(rho2) * sg + rs / rho2 * r) * std::abs(p.dz) / (4.0 * pi);
    };
    // Panels graded geometrically (ratio 2) away from the closest parameter
    // up to length 0.05, uniform beyond; 30-point Gauss-Legendre on each.
    std::vector<double> cuts{0.0};
    double o = 1e-12;
    for (; o < 0.05; o *= 2.0) {
        cuts.push_back(o);
        cuts.push_back(-o);
    }
    const int rest = static_cast<int>(std::ceil((pi - o) / 0.05));
    for (int i = 0; i <= rest; ++i) {
        const double c = o + (pi - o) * i / rest;
        cuts.push_back(c);
        cuts.push_back(-c);
    }
    std::sort(cuts.begin(), cuts.end());

    using GL = boost::math::quadrature::gauss<double, 30>;
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = sbest + 0.5 * (cuts[i] + cuts[i + 1]);
        const double half = 0.5 * (cuts[i + 1] - cuts[i]);
        cplx panel = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            panel += ws[k] * integrand(mid + half * xs[k]);
            if (xs[k] != 0.0)
                panel += ws[k] * integrand(mid - half * xs[k]);
        }
        total += half * panel;
    }
    return total;
}

namespace {

// kappa n along an analytic curve.
std::function<cplx(double)> curvature_force(const CurveSpec& spec)
{
    return [spec](double s) {
        const CurvePoint p = evaluate_curve(spec, s);
        const double sp = std::abs(p.dz);
        const double kappa = std::imag(std::conj(p.dz) * p.ddz) / (sp * sp * sp);
        return kappa * (-I * p.dz / sp);
    };
}

std::vector<cplx> curvature_force(const Curve& c)
{
    std::vector<cplx> f(c.size());
    for (int j = 0; j < c.size(); ++j)
        f[j] = c.curvature()[j] * c.normals()[j];
    return f;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

std::vector<ConvergenceRow> run_stokes_example1(const StokesEx1Config& cfg)
{
    std::vector<ConvergenceRow> rows;
    for (double gap : cfg.gaps) {
        CurveSpec src{EllipseShape{1.0, 2.0}, {}, 0};
        CurveSpec dst{EllipseShape{1.0, 2.0}, Placement{cplx(2.0 + gap, 0.0), 0.0, 1.0}, cfg.targets};
        const auto targets = Curve::analytic(dst).nodes();
        const auto force = curvature_force(src);
        std::vector<cplx> oracle(targets.size());
        for (std::size_t t = 0; t < targets.size(); ++t)
            oracle[t] = stokes_slp_oracle(src, force, targets[t]);
        const std::string name = "gap=" + fmt(gap);
        for (int n : cfg.ns) {
            src.n = n;
            const Curve c = Curve::analytic(src);
            const auto sigma = curvature_force(c);
            rows.push_back({n, name, "close",
                            max_diff(stokes_slp_eval(c, sigma, targets, Side::exterior), oracle)});
            rows.push_back({n, name, "native", max_diff(stokes_slp_native(c, sigma, targets), oracle)});
        }
    }
    return rows;
}

std::vector<Check> check_stokes_example1(const std::vector<ConvergenceRow>& rows)
{
    std::vector<Check> out;
    for (const char* g : {"gap=0.1", "gap=0.01", "gap=0.001"}) {
        const std::string name = std::string(g) + " close N=64 error <= 1e-11";
        const auto* r = find_row(rows, 64, g, "close");
        out.push_back(r ? Check{name, r->max_abs_err <= 1e-11, sci(r->max_abs_err)} : missing(name, 64));
    }
    const std::string name = "gap=0.001 native N=256 error >= 1e-4";
    const auto* r = find_row(rows, 256, "gap=0.001", "native");
    out.push_back(r ? Check{name, r->max_abs_err >= 1e-4, sci(r->max_abs_err)} : missing(name, 256));
    return out;
}

std::vector<ConvergenceRow> run_stokes_example2(const StokesEx2Config& cfg)
{
    std::vector<ConvergenceRow> rows;
    for (double aspect : cfg.aspects) {
        CurveSpec spec{EllipseShape{aspect, 1.0}, {}, 0};
        const std::vector<cplx> target{cplx(aspect + cfg.distance, 0.0)};
        const cplx oracle = stokes_slp_oracle(spec, curvature_force(spec), target[0]);
        const std::string name = "aspect=" + fmt(aspect);
        for (int n : cfg.ns) {
            spec.n = n;
            const Curve c = Curve::analytic(spec);
            const auto sigma = curvature_force(c);
            rows.push_back(
                {n, name, "close", std::abs(stokes_slp_eval(c, sigma, target, Side::exterior)[0] - oracle)});
            rows.push_back({n, name, "native", std::abs(stokes_slp_native(c, sigma, target)[0] - oracle)});
        }
    }
    return rows;
}

std::vector<Check> check_stokes_example2(const std::vector<ConvergenceRow>& rows)
{
    std::vector<Check> out;
    std::vector<double> native128;
    for (const char* a : {"aspect=2", "aspect=4", "aspect=8"}) {
        std::vector<double> e;
        for (const auto& r : rows)
            if (r.case_name == a && r.quantity == "close")
                e.push_back(r.max_abs_err);
        // After the first error below 1e-4, each error may not exceed its
        // predecessor unless it is within 10x of the sequence minimum (roundoff floor).
        const double floor = e.empty() ? 0.0 : *std::min_element(e.begin(), e.end());
        bool mono = !e.empty();
        bool knee = false;
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            knee = knee || e[i] < 1e-4;
            if (knee && e[i + 1] > e[i] && e[i + 1] > 10.0 * floor)
                mono = false;
        }
        out.push_back({std::string(a) + " close errors decay monotonically after the knee", mono,
                       "floor " + sci(floor)});
        if (const auto* n128 = find_row(rows, 128, a, "native"))
            native128.push_back(n128->max_abs_err);
    }
    const std::string name = "aspect=2 close N=128 error <= 1e-11";
    const auto* r = find_row(rows, 128, "aspect=2", "close");
    out.push_back(r ? Check{name, r->max_abs_err <= 1e-11, sci(r->max_abs_err)} : missing(name, 128));
    const std::string spread = "native N=128 errors within one order of magnitude across aspects";
    if (native128.size() == 3) {
        const double lo = *std::min_element(native128.begin(), native128.end());
        const double hi = *std::max_element(native128.begin(), native128.end());
        out.push_back({spread, hi <= 10.0 * lo, sci(lo) + " .. " + sci(hi)});
    } else {
        out.push_back(missing(spread, 128));
    }
    return out;
}

// ---- Stokes Example 3 ----------------------------------------------------------------

std::vector<Stokeslet> default_example3_sources()
{
    return {
        {cplx(0.18, 0.06), cplx(0.81, -0.54)},
        {cplx(-0.12, 0.21), cplx(-0.675, 0.945)},
        {cplx(-0.21, -0.09), cplx(0.54, 0.675)},
        {cplx(0.03, -0.24), cplx(-0.945, -0.405)},
        {cplx(0.00, 0.00), cplx(0.405, 0.81)},
    };
}

std::vector<Stokeslet> mirror_sources(const std::vector<Stokeslet>& s, double radius)
{
    std::vector<Stokeslet> out = s;
    for (auto& k : out) {
        const double r = std::abs(k.position);
        k.position = r > 0.0 ? k.position * (radius / r) : cplx(radius, 0.0);
    }
    return out;
}

StokesEx3Result run_stokes_example3(const StokesEx3Config& cfg)
{
    const auto src_in = cfg.sources.empty() ? default_example3_sources() : cfg.sources;
    const auto ref_ex = ReferenceField::stokeslets(src_in);
    const auto ref_in = ReferenceField::stokeslets(mirror_sources(src_in));
    const Curve classify = star_curve(cfg.star, 256);
    ref_ex.check_side(classify, Side::exterior);
    ref_in.check_side(classify, Side::interior);
    const ErrorGrid gin(cfg.grid, {&classify}, Side::interior);
    const ErrorGrid gex(cfg.grid, {&classify}, Side::exterior);
    const auto pin = gin.active_points(), pex = gex.active_points();

    struct Case {
        const char* name;
        Condition cond;
        Side side;
    };
    const Case cases[] = {{"ext_dirichlet", Condition::dirichlet, Side::exterior},
                          {"int_dirichlet", Condition::dirichlet, Side::interior},
                          {"ext_neumann", Condition::neumann, Side::exterior},
                          {"int_neumann", Condition::neumann, Side::interior}};

    StokesEx3Result out;
    std::vector<int> ns = cfg.ns;
    const bool field_in_ns = std::find(ns.begin(), ns.end(), cfg.field_n) != ns.end();
    if (cfg.field_n > 0 && !field_in_ns)
        ns.push_back(cfg.field_n);
    for (int n : ns) {
        const Curve curve = star_curve(cfg.star, n);
        for (const auto& c : cases) {
            const bool in = c.side == Side::interior;
            const auto& ref = in ? ref_in : ref_ex;
            const auto& pts = in ? pin : pex;
            BvpSpec spec;
            spec.equation = Equation::stokes;
            spec.condition = c.cond;
            spec.side = c.side;
            spec.curves = {curve};
            spec.data = {c.cond == Condition::dirichlet ? ref.dirichlet_data(curve)
                                                        : ref.neumann_data(curve)};
            if (n == ns.front()) {
                double sup = 0.0;
                for (double v : spec.data[0])
                    sup = std::max(sup, std::abs(v));
                out.data_sup.emplace_back(c.name, sup);
            }
            const auto sol = solve_bvp(spec);
            const auto f = evaluate_solution(spec, sol.density, pts);
            const auto err = bvp_field_errors(spec, f, ref, pts).velocity;
            if (std::find(cfg.ns.begin(), cfg.ns.end(), n) != cfg.ns.end())
                out.rows.push_back({n, c.name, "velocity", max_of(err)});
            if (n == cfg.field_n && std::string(c.name) == "ext_neumann") {
                ErrorGrid g = gex;
                g.set_errors(err);
                out.field = std::move(g);
            }
        }
    }
    return out;
}

std::vector<Check> check_stokes_example3(const StokesEx3Result& r)
{
    std::vector<Check> out;
    for (const char* c : {"ext_dirichlet", "int_dirichlet", "ext_neumann", "int_neumann"}) {
        const auto* e100 = find_row(r.rows, 100, c, "velocity");
        const auto* e200 = find_row(r.rows, 200, c, "velocity");
        const auto* e350 = find_row(r.rows, 350, c, "velocity");
        const std::string top = std::string(c) + " N=350 grid error <= 1e-10";
        out.push_back(e350 ? Check{top, e350->max_abs_err <= 1e-10, sci(e350->max_abs_err)}
                           : missing(top, 350));
        // Superalgebraic proxy: at least 1e3 reduction from N=100 to N=200
        // (observed algebraic order >= 10).
        const std::string drop = std::string(c) + " error drop N=100 -> 200 >= 1e3";
        if (e100 && e200) {
            const double a = e100->max_abs_err, b = e200->max_abs_err;
            out.push_back({drop, b * 1e3 <= a, sci(a) + " -> " + sci(b)});
        } else {
            out.push_back(missing(drop, e100 ? 200 : 100));
        }
    }
    return out;
}

// ---- Stokes Example 4 ----------------------------------------------------------------

StokesEx4Result run_stokes_example4(const StokesEx4Config& cfg)
{
    const auto layout = generate_ellipse_layout(cfg.layout);
    std::mt19937_64 rng(cfg.force_seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Stokeslet> src;
    for (const auto& s : layout.specs)
        src.push_back({s.placement.center, cplx(u(rng), u(rng))});
    const auto ref = ReferenceField::stokeslets(src);

    StokesEx4Result out;
    out.min_gap = layout.min_gap;
    BvpSpec spec;
    spec.equation = Equation::stokes;
    spec.condition = Condition::dirichlet;
    spec.side = Side::exterior;
    spec.curves = layout.curves;
    for (const auto& c : layout.curves) {
        spec.data.push_back(ref.dirichlet_data(c));
        for (double v : spec.data.back())
            out.data_sup = std::max(out.data_sup, std::abs(v));
    }

    MultibodyOperator op(spec.curves);
    Eigen::VectorXd b(op.size());
    for (int q = 0; q < op.body_count(); ++q)
        for (std::size_t i = 0; i < spec.data[q].size(); ++i)
            b(op.offset(q) + static_cast<Eigen::Index>(i)) = spec.data[q][i];
    const auto g = gmres([&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { op.apply(x, y); }, b,
                         cfg.gmres);
    out.iterations = g.iterations;
    out.gmres_residual = g.relative_residual;

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    std::vector<const Curve*> cp;
    for (const auto& c : spec.curves) {
        cp.push_back(&c);
        for (const auto& z : c.nodes()) {
            x0 = std::min(x0, z.real());
            x1 = std::max(x1, z.real());
            y0 = std::min(y0, z.imag());
            y1 = std::max(y1, z.imag());
        }
    }
    const GridSpec gs{x0 - cfg.margin, x1 + cfg.margin, y0 - cfg.margin, y1 + cfg.margin, cfg.grid_h};
    ErrorGrid grid(gs, cp, Side::exterior);
    const auto pts = grid.active_points();
    const auto vel = op.velocity(g.x, pts);
    std::vector<double> err(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        err[i] = std::abs(vel[i] - ref.velocity(pts[i]));
    grid.set_errors(err);
    out.max_err = grid.max_error();
    out.field = std::move(grid);
    return out;
}

std::vector<Check> check_stokes_example4(const StokesEx4Result& r)
{
    return {
        {"multibody grid error <= 1e-9", r.max_err <= 1e-9, sci(r.max_err)},
        {"layout minimum gap <= 1e-3", r.min_gap <= 1e-3 * (1 + 1e-6), sci(r.min_gap)},
        {"GMRES converged (relative residual <= 1e-11)", r.gmres_residual <= 1e-11,
         sci(r.gmres_residual) + " in " + std::to_string(r.iterations) + " iterations"},
    };
}

} // namespace closelp
