#include "closelp/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace closelp {

namespace {

void check_size(int n)
{
    if (n < 8 || n % 2)
        throw InvalidArgument("curve: N must be even and >= 8, got " + std::to_string(n));
}

CurvePoint star_sample(const StarShape& st, double s)
{
    const double k = st.frequency;
    const double r = 1.0 + st.amplitude * std::cos(k * s);
    const double dr = -st.amplitude * k * std::sin(k * s);
    const double ddr = -st.amplitude * k * k * std::cos(k * s);
    const cplx e = std::polar(1.0, s);
    return {r * e, cplx(dr, r) * e, cplx(ddr - r, 2.0 * dr) * e};
}

CurvePoint ellipse_sample(const EllipseShape& el, double s)
{
    const double c = std::cos(s), sn = std::sin(s);
    return {cplx(el.a * c, el.b * sn), cplx(-el.a * sn, el.b * c), cplx(-el.a * c, -el.b * sn)};
}

} // namespace

CurvePoint evaluate_curve(const CurveSpec& spec, double s)
{
    const auto& pl = spec.placement;
    const cplx rot = pl.scale * std::polar(1.0, pl.angle);
    const CurvePoint p = std::visit(
        [s](const auto& shape) {
            if constexpr (std::is_same_v<std::decay_t<decltype(shape)>, StarShape>)
                return star_sample(shape, s);
            else
                return ellipse_sample(shape, s);
        },
        spec.shape);
    return {pl.center + rot * p.z, rot * p.dz, rot * p.ddz};
}

GeometricData geometric_data(std::span<const cplx> z)
{
    check_size(static_cast<int>(z.size()));
    GeometricData g;
    g.d_nodes = spectral_derivative(z, 1);
    g.accel = spectral_derivative(z, 2);
    const std::size_t n = z.size();
    g.speed.resize(n);
    g.normals.resize(n);
    g.curvature.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sp = std::abs(g.d_nodes[j]);
        if (sp < 1e-12)
            throw Error("geometric_data: degenerate parametrization (|Z'| < 1e-12)");
        g.speed[j] = sp;
        g.normals[j] = -I * g.d_nodes[j] / sp;
        g.curvature[j] = std::imag(std::conj(g.d_nodes[j]) * g.accel[j]) / (sp * sp * sp);
    }
    return g;
}

Curve::Curve(std::vector<cplx> z, std::vector<cplx> dz, std::vector<cplx> ddz)
    : n_(static_cast<int>(z.size())), z_(std::move(z)), dz_(std::move(dz)), ddz_(std::move(ddz))
{
    check_size(n_);
    const double h = 2.0 * pi / n_;
    w_.resize(n_);
    speed_.resize(n_);
    kappa_.resize(n_);
    normal_.resize(n_);
    dy_.resize(n_);
    double area = 0.0;
    for (int j = 0; j < n_; ++j) {
        const double sp = std::abs(dz_[j]);
        if (sp < 1e-12)
            throw Error("curve: degenerate parametrization (|Z'| < 1e-12)");
        speed_[j] = sp;
        w_[j] = h * sp;
        normal_[j] = -I * dz_[j] / sp;
        dy_[j] = dz_[j] * h;
        kappa_[j] = std::imag(std::conj(dz_[j]) * ddz_[j]) / (sp * sp * sp);
        const cplx a = z_[j], b = z_[(j + 1) % n_];
        area += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area <= 0.0)
        throw InvalidArgument("curve: nodes must be ordered counterclockwise");
    interp_ = TrigInterpolant(z_);
    fine_ = resample_to(std::span<const cplx>(z_), 4 * n_);
}

Curve Curve::analytic(const CurveSpec& spec)
{
    check_size(spec.n);
    const auto& pl = spec.placement;
    if (!(pl.scale > 0.0))
        throw InvalidArgument("curve: scale must be positive");
    if (const auto* el = std::get_if<EllipseShape>(&spec.shape)) {
        if (!(el->a > 0.0) || !(el->b > 0.0))
            throw InvalidArgument("curve: ellipse semi-axes must be positive");
    }
    if (const auto* st = std::get_if<StarShape>(&spec.shape)) {
        if (std::abs(st->amplitude) >= 1.0 || st->frequency < 0)
            throw InvalidArgument("curve: star needs |amplitude| < 1 and frequency >= 0");
    }
    std::vector<cplx> z(spec.n), dz(spec.n), ddz(spec.n);
    for (int j = 0; j < spec.n; ++j) {
        const CurvePoint p = evaluate_curve(spec, 2.0 * pi * j / spec.n);
        z[j] = p.z;
        dz[j] = p.dz;
        ddz[j] = p.ddz;
    }
    return Curve(std::move(z), std::move(dz), std::move(ddz));
}

Curve Curve::from_samples(std::vector<cplx> nodes)
{
    check_size(static_cast<int>(nodes.size()));
    auto dz = spectral_derivative(std::span<const cplx>(nodes), 1);
    auto ddz = spectral_derivative(std::span<const cplx>(nodes), 2);
    return Curve(std::move(nodes), std::move(dz), std::move(ddz));
}

double Curve::perimeter() const
{
    double p = 0.0;
    for (double w : w_)
        p += w;
    return p;
}

cplx Curve::centroid() const
{
    cplx c = 0.0;
    for (const auto& z : z_)
        c += z;
    return c / static_cast<double>(n_);
}

double Curve::diameter() const
{
    double d = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            d = std::max(d, std::abs(z_[i] - z_[j]));
    return d;
}

CurveProjection Curve::project(cplx x) const
{
    const int m = static_cast<int>(fine_.size());
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double d = std::norm(fine_[i] - x);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    // Newton on f(s) = Re(conj(Z - x) Z') = 0, safeguarded to one fine cell.
    const double h = 2.0 * pi / m;
    const double s0 = best * h;
    double s = s0;
    cplx z, dz, ddz;
    for (int it = 0; it < 30; ++it) {
        interp_.eval3(s, z, dz, ddz);
        const double f = std::real(std::conj(z - x) * dz);
        const double df = std::norm(dz) + std::real(std::conj(z - x) * ddz);
        if (df <= 0.0)
            break;
        double step = f / df;
        step = std::clamp(step, -h, h);
        s -= step;
        s = std::clamp(s, s0 - 1.5 * h, s0 + 1.5 * h);
        if (std::abs(step) < 1e-15)
            break;
    }
    interp_.eval3(s, z, dz, ddz);
    CurveProjection p;
    p.param = s;
    p.point = z;
    p.distance = std::abs(x - z);
    const cplx n = -I * dz / std::abs(dz);
    p.side = std::real(std::conj(n) * (x - z)) > 0.0 ? Side::exterior : Side::interior;
    return p;
}

Curve Curve::resampled(int m) const
{
    return from_samples(resample_to(std::span<const cplx>(z_), m));
}

} // namespace closelp
