#include "closelp/multibody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace closelp {

MultibodyOperator::MultibodyOperator(std::vector<Curve> curves, StokesOptions opts)
{
    const int K = static_cast<int>(curves.size());
    if (K == 0)
        throw InvalidArgument("multibody: no curves");
    offset_.push_back(0);
    for (auto& c : curves) {
        offset_.push_back(offset_.back() + 2 * c.size());
        ev_.emplace_back(c, opts);
    }
    diag_.resize(K);
    for (int q = 0; q < K; ++q) {
        diag_[q] = stokes_dlp_matrix(ev_[q].curve()) + stokes_slp_matrix(ev_[q].laplace());
        diag_[q].diagonal().array() += 0.5;
    }
    others_.resize(K);
    for (int q = 0; q < K; ++q) {
        std::vector<cplx> pts;
        for (int p = 0; p < K; ++p)
            if (p != q)
                pts.insert(pts.end(), ev_[p].curve().nodes().begin(), ev_[p].curve().nodes().end());
        others_[q] = ev_[q].prepare(pts, Side::exterior);
    }
}

void MultibodyOperator::apply(const Eigen::VectorXd& sigma, Eigen::VectorXd& out) const
{
    const int K = body_count();
    out.resize(size());
    for (int q = 0; q < K; ++q)
        out.segment(offset_[q], diag_[q].rows()).noalias() =
            diag_[q] * sigma.segment(offset_[q], diag_[q].rows());
    if (K == 1)
        return;
    for (int q = 0; q < K; ++q) {
        const auto s = deinterleave(
            std::span<const double>(sigma.data() + offset_[q], static_cast<std::size_t>(diag_[q].rows())));
        auto u = ev_[q].dlp(s, others_[q]);
        const auto us = ev_[q].slp(s, others_[q]);
        std::size_t t = 0;
        for (int p = 0; p < K; ++p) {
            if (p == q)
                continue;
            for (int j = 0; j < ev_[p].curve().size(); ++j, ++t) {
                const cplx v = u[t] + us[t];
                out(offset_[p] + 2 * j) += v.real();
                out(offset_[p] + 2 * j + 1) += v.imag();
            }
        }
    }
}

std::vector<cplx> MultibodyOperator::velocity(const Eigen::VectorXd& sigma,
                                              std::span<const cplx> points) const
{
    std::vector<cplx> u(points.size(), 0.0);
    for (int q = 0; q < body_count(); ++q) {
        const auto s = deinterleave(std::span<const double>(
            sigma.data() + offset_[q], static_cast<std::size_t>(offset_[q + 1] - offset_[q])));
        const auto t = ev_[q].prepare(points, Side::exterior);
        const auto a = ev_[q].dlp(s, t);
        const auto b = ev_[q].slp(s, t);
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] += a[i] + b[i];
    }
    return u;
}

MultibodySolution solve_multibody(const BvpSpec& spec, const GmresOptions& cfg,
                                  const StokesOptions& opts)
{
    spec.validate();
    if (spec.equation != Equation::stokes || spec.condition != Condition::dirichlet ||
        spec.side != Side::exterior)
        throw InvalidArgument("solve_multibody: exterior Stokes Dirichlet only");
    MultibodyOperator op(spec.curves, opts);
    Eigen::VectorXd b(op.size());
    for (int q = 0; q < op.body_count(); ++q)
        for (std::size_t i = 0; i < spec.data[q].size(); ++i)
            b(op.offset(q) + static_cast<Eigen::Index>(i)) = spec.data[q][i];
    MultibodySolution sol;
    sol.gmres = gmres([&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { op.apply(x, y); }, b, cfg);
    for (int q = 0; q < op.body_count(); ++q)
        sol.densities.emplace_back(sol.gmres.x.data() + op.offset(q),
                                   sol.gmres.x.data() + op.offset(q + 1));
    if (!sol.gmres.converged)
        throw Error("solve_multibody: GMRES did not converge in " +
                    std::to_string(sol.gmres.iterations) + " iterations, residual " +
                    std::to_string(sol.gmres.relative_residual));
    return sol;
}

double curve_gap(const Curve& a, const Curve& b)
{
    // Coarse pass over fine samples of b, then golden-section refinement in s.
    const int m = 8 * b.size();
    double best = std::numeric_limits<double>::infinity();
    double sbest = 0.0;
    for (int i = 0; i < m; ++i) {
        const double s = 2.0 * pi * i / m;
        const double d = a.project(b.point_at(s)).distance;
        if (d < best) {
            best = d;
            sbest = s;
        }
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = sbest - 2.0 * pi / m, hi = sbest + 2.0 * pi / m;
    auto f = [&](double s) { return a.project(b.point_at(s)).distance; };
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::min(best, std::min(f1, f2));
}

namespace {

// Signed separation: negative when the bodies intersect or one contains the other.
double separation(const Curve& a, const Curve& b)
{
    for (int j = 0; j < b.size(); j += 4)
        if (a.side_of(b.nodes()[j]) == Side::interior)
            return -1.0;
    for (int j = 0; j < a.size(); j += 4)
        if (b.side_of(a.nodes()[j]) == Side::interior)
            return -1.0;
    return curve_gap(a, b);
}

} // namespace

EllipseLayout generate_ellipse_layout(const EllipseLayoutOptions& opts)
{
    if (opts.count < 1 || opts.min_gap <= 0.0)
        throw InvalidArgument("ellipse layout: need count >= 1 and min_gap > 0");
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(opts.count))));

    EllipseLayout out;
    // Probe resolution for gap checks; the analytic ellipse is exact at any N.
    std::vector<Curve> probes;
    for (int k = 0; k < opts.count; ++k) {
        const double a = opts.semi_major_min + (opts.semi_major_max - opts.semi_major_min) * unit(rng);
        const double asp = opts.aspect_min + (opts.aspect_max - opts.aspect_min) * unit(rng);
        const double angle = pi * unit(rng);
        const cplx home(opts.spacing * (k % cols) + 0.1 * (unit(rng) - 0.5),
                        opts.spacing * (k / cols) + 0.1 * (unit(rng) - 0.5));
        CurveSpec spec{EllipseShape{a, a / asp}, Placement{home, angle, 1.0}, 64};
        auto make = [&](cplx center) {
            CurveSpec s = spec;
            s.placement.center = center;
            return Curve::analytic(s);
        };
        if (k > 0) {
            // Slide from home toward the nearest body placed so far.
            cplx target = out.specs[0].placement.center;
            for (const auto& sp : out.specs)
                if (std::abs(sp.placement.center - home) < std::abs(target - home))
                    target = sp.placement.center;
            auto gap = [&](double t) {
                const Curve c = make(target + t * (home - target));
                double g = std::numeric_limits<double>::infinity();
                for (const auto& p : probes)
                    g = std::min(g, separation(p, c));
                return g - opts.min_gap;
            };
            double lo = 0.0, hi = 1.0;
            while (gap(hi) < 0.0)
                hi *= 1.5;
            for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                (gap(mid) < 0.0 ? lo : hi) = mid;
            }
            spec.placement.center = target + hi * (home - target);
        }
        probes.push_back(make(spec.placement.center));
        out.specs.push_back(spec);
    }
    for (auto& s : out.specs) {
        s.n = opts.n;
        out.curves.push_back(Curve::analytic(s));
    }
    out.min_gap = std::numeric_limits<double>::infinity();
    for (int p = 0; p < opts.count; ++p)
        for (int q = p + 1; q < opts.count; ++q)
            out.min_gap = std::min(out.min_gap, curve_gap(probes[p], probes[q]));
    return out;
}

} // namespace closelp
