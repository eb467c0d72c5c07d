#include "closelp/stokes.hpp"

#include <cmath>

namespace closelp {

std::pair<std::vector<cplx>, std::vector<cplx>> complex_density_split(std::span<const cplx> sigma,
                                                                      std::span<const cplx> normals)
{
    if (sigma.size() != normals.size())
        throw InvalidArgument("complex_density_split: size mismatch");
    std::vector<cplx> t1(sigma.size()), t2(sigma.size());
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        const cplx q = sigma[j] / normals[j];
        t1[j] = q * normals[j].real();
        t2[j] = q * normals[j].imag();
    }
    return {std::move(t1), std::move(t2)};
}

namespace {

Curve upsampled(const Curve& c, double beta)
{
    if (beta < 1.0)
        throw InvalidArgument("stokes: upsampling factor must be >= 1");
    return beta == 1.0 ? c : c.resampled(upsampled_size(c.size(), beta));
}

// Real densities y.sigma, sigma1, sigma2 as the three columns.
Eigen::MatrixXd laplace_densities(const Curve& c, std::span<const cplx> sigma)
{
    const int n = c.size();
    if (static_cast<int>(sigma.size()) != n)
        throw InvalidArgument("stokes: density length must match curve nodes");
    Eigen::MatrixXd t(n, 3);
    for (int j = 0; j < n; ++j) {
        const cplx y = c.nodes()[j];
        t(j, 0) = y.real() * sigma[j].real() + y.imag() * sigma[j].imag();
        t(j, 1) = sigma[j].real();
        t(j, 2) = sigma[j].imag();
    }
    return t;
}

} // namespace

StokesEvaluator::StokesEvaluator(const Curve& curve, StokesOptions opts)
    : opts_(opts), base_(curve, opts.laplace), fine_(upsampled(curve, opts.upsample), opts.laplace)
{
}

StokesEvaluator::Targets StokesEvaluator::prepare(std::span<const cplx> points, Side side) const
{
    Targets t;
    t.points.assign(points.begin(), points.end());
    t.side = side;
    t.coarse = base_.targets(points, side);
    t.fine = fine_.targets(points, side);
    return t;
}

std::vector<cplx> StokesEvaluator::slp(std::span<const cplx> sigma, const Targets& targets) const
{
    const auto h = base_.slp(laplace_densities(curve(), sigma), targets.coarse, true);
    std::vector<cplx> u(targets.points.size());
    for (std::size_t t = 0; t < u.size(); ++t) {
        const cplx x = targets.points[t];
        const cplx s(h.value(t, 1).real(), h.value(t, 2).real());
        const cplx g = std::conj(h.derivative(t, 0)) - x.real() * std::conj(h.derivative(t, 1)) -
                       x.imag() * std::conj(h.derivative(t, 2));
        u[t] = 0.5 * (s + g);
    }
    return u;
}

std::vector<cplx> StokesEvaluator::dlp(std::span<const cplx> sigma, const Targets& targets) const
{
    const auto h = base_.dlp(laplace_densities(curve(), sigma).cast<cplx>(), targets.coarse, true);

    const int nf = fine_.curve().size();
    const auto sf = nf == curve().size() ? std::vector<cplx>(sigma.begin(), sigma.end())
                                         : resample_to(sigma, nf);
    const auto [t1, t2] = complex_density_split(sf, fine_.curve().normals());
    Eigen::MatrixXcd tau(nf, 2);
    for (int j = 0; j < nf; ++j) {
        tau(j, 0) = t1[j];
        tau(j, 1) = t2[j];
    }
    const auto hf = fine_.dlp(tau, targets.fine, false);

    std::vector<cplx> u(targets.points.size());
    for (std::size_t t = 0; t < u.size(); ++t) {
        const cplx x = targets.points[t];
        const cplx first(hf.value(t, 0).real(), hf.value(t, 1).real());
        const cplx g = std::conj(h.derivative(t, 0)) - x.real() * std::conj(h.derivative(t, 1)) -
                       x.imag() * std::conj(h.derivative(t, 2));
        u[t] = first + g;
    }
    return u;
}

std::vector<cplx> stokes_slp_eval(const Curve& curve, std::span<const cplx> sigma,
                                  std::span<const cplx> targets, Side side,
                                  const StokesOptions& opts)
{
    StokesEvaluator ev(curve, opts);
    return ev.slp(sigma, ev.prepare(targets, side));
}

std::vector<cplx> stokes_dlp_eval(const Curve& curve, std::span<const cplx> sigma,
                                  std::span<const cplx> targets, Side side,
                                  const StokesOptions& opts)
{
    StokesEvaluator ev(curve, opts);
    return ev.dlp(sigma, ev.prepare(targets, side));
}

std::vector<cplx> stokes_slp_native(const Curve& curve, std::span<const cplx> sigma,
                                    std::span<const cplx> targets)
{
    const auto& y = curve.nodes();
    const auto& w = curve.weights();
    std::vector<cplx> u(targets.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(targets.size()); ++t) {
        cplx acc = 0.0;
        for (int j = 0; j < curve.size(); ++j) {
            const cplx r = targets[t] - y[j];
            const double rho2 = std::norm(r);
            const double rs = r.real() * sigma[j].real() + r.imag() * sigma[j].imag();
            acc += (-0.5 * std::log(rho2) * sigma[j] + rs / rho2 * r) * w[j];
        }
        u[t] = acc / (4.0 * pi);
    }
    return u;
}

std::vector<cplx> stokes_dlp_native(const Curve& curve, std::span<const cplx> sigma,
                                    std::span<const cplx> targets)
{
    const auto& y = curve.nodes();
    const auto& w = curve.weights();
    const auto& nr = curve.normals();
    std::vector<cplx> u(targets.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(targets.size()); ++t) {
        cplx acc = 0.0;
        for (int j = 0; j < curve.size(); ++j) {
            const cplx r = targets[t] - y[j];
            const double rho2 = std::norm(r);
            const double rn = r.real() * nr[j].real() + r.imag() * nr[j].imag();
            const double rs = r.real() * sigma[j].real() + r.imag() * sigma[j].imag();
            acc += rn * rs / (rho2 * rho2) * r * w[j];
        }
        u[t] = acc / pi;
    }
    return u;
}

} // namespace closelp
