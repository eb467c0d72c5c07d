#include "closelp/cauchy.hpp"

#include <algorithm>
#include <cmath>

namespace closelp {

ExteriorAnchor::ExteriorAnchor(const Curve& curve, cplx a, double min_fraction) : a_(a)
{
    // Crossing count on the node polygon: the quadrature winding sum is
    // unreliable on coarse, elongated curves.
    const auto& y = curve.nodes();
    bool inside = false;
    for (int j = 0, k = curve.size() - 1; j < curve.size(); k = j++) {
        if ((y[j].imag() > a.imag()) != (y[k].imag() > a.imag())) {
            const double xc = y[k].real() + (a.imag() - y[k].imag()) * (y[j].real() - y[k].real()) /
                                                (y[j].imag() - y[k].imag());
            if (a.real() < xc)
                inside = !inside;
        }
    }
    if (!inside)
        throw InvalidArgument("exterior anchor is not enclosed by the curve");
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& yj : y)
        dmin = std::min(dmin, std::abs(yj - a));
    if (dmin < min_fraction * curve.diameter())
        throw InvalidArgument("exterior anchor is too close to the curve");
}

ExteriorAnchor ExteriorAnchor::centroid(const Curve& curve, double min_fraction)
{
    return ExteriorAnchor(curve, curve.centroid(), min_fraction);
}

TargetBatch TargetBatch::make(const Curve& curve, std::span<const cplx> points, Side side,
                              const CauchyOptions& opts)
{
    TargetBatch b;
    b.points.assign(points.begin(), points.end());
    b.side = side;
    const std::size_t m = points.size();
    b.node_hit.assign(m, -1);
    b.near.assign(m, {});
    const auto& y = curve.nodes();
    const int n = curve.size();
    const double d2 = opts.near_distance * opts.near_distance;
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(m); ++t) {
        const cplx x = points[t];
        for (int j = 0; j < n; ++j) {
            const double r2 = std::norm(y[j] - x);
            if (r2 < d2) {
                b.near[t].push_back(j);
                const double tol = opts.snap_rtol * std::max(1.0, std::abs(y[j]));
                if (x == y[j] || r2 <= tol * tol)
                    b.node_hit[t] = j;
            }
        }
    }
    return b;
}

cplx cauchy_winding(const Curve& curve, cplx x)
{
    cplx s = 0.0;
    const auto& y = curve.nodes();
    const auto& dy = curve.line_elements();
    for (int j = 0; j < curve.size(); ++j)
        s += dy[j] * recip(y[j] - x);
    return s / (2.0 * pi * I);
}

namespace {

void node_hit_row(const Curve& curve, const Eigen::MatrixXcd& V, const ExteriorAnchor* anchor,
                  int i, bool with_derivative, Eigen::MatrixXcd& val, Eigen::MatrixXcd& der,
                  Eigen::Index t)
{
    const auto& y = curve.nodes();
    const auto& dy = curve.line_elements();
    const int n = curve.size();
    const Eigen::Index K = V.cols();
    for (Eigen::Index k = 0; k < K; ++k)
        val(t, k) = V(i, k);
    if (!with_derivative)
        return;
    const cplx inv_dyi = recip(dy[i]);
    for (Eigen::Index k = 0; k < K; ++k) {
        cplx acc = 0.0;
        const cplx vi = V(i, k);
        if (!anchor) {
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                acc += (V(j, k) - vi) * dy[j] * recip(y[j] - y[i]);
            }
            der(t, k) = -inv_dyi * acc;
        } else {
            const cplx a = anchor->point();
            const cplx ya = y[i] - a;
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                acc += (V(j, k) - vi * ya * recip(y[j] - a)) * dy[j] * recip(y[j] - y[i]);
            }
            der(t, k) = -inv_dyi * acc - vi * recip(ya);
        }
    }
}

} // namespace

HolomorphicValues cauchy_evaluate(const Curve& curve, const Eigen::MatrixXcd& V,
                                  const TargetBatch& targets, const ExteriorAnchor* anchor,
                                  const CauchyOptions& opts, bool with_derivative)
{
    const int n = curve.size();
    if (V.rows() != n)
        throw InvalidArgument("cauchy_evaluate: data rows must match curve nodes");
    const bool exterior = targets.side == Side::exterior;
    if (exterior && !anchor)
        throw InvalidArgument("cauchy_evaluate: exterior evaluation needs an anchor");
    if (!exterior)
        anchor = nullptr;

    const Eigen::Index M = static_cast<Eigen::Index>(targets.size());
    const Eigen::Index K = V.cols();
    HolomorphicValues out;
    out.value.resize(M, K);
    if (with_derivative)
        out.derivative.resize(M, K);

    const auto& y = curve.nodes();
    const auto& dy = curve.line_elements();
    std::vector<cplx> q;
    if (anchor) {
        q.resize(n);
        for (int j = 0; j < n; ++j)
            q[j] = recip(y[j] - anchor->point());
    }

#pragma omp parallel
    {
        std::vector<cplx> r(n), c(n), vx(K);
        std::vector<char> is_near(n, 0);
#pragma omp for schedule(dynamic, 64)
        for (Eigen::Index t = 0; t < M; ++t) {
            const int hit = targets.node_hit[t];
            if (hit >= 0) {
                node_hit_row(curve, V, anchor, hit, with_derivative, out.value, out.derivative, t);
                continue;
            }
            const cplx x = targets.points[t];
            cplx den = 0.0;
            for (int j = 0; j < n; ++j) {
                r[j] = recip(y[j] - x);
                c[j] = dy[j] * r[j];
            }
            if (anchor) {
                for (int j = 0; j < n; ++j)
                    den += c[j] * q[j];
            } else {
                for (int j = 0; j < n; ++j)
                    den += c[j];
            }
            const cplx inv_den = 1.0 / den;
            const cplx pre = anchor ? 1.0 / (x - anchor->point()) : cplx(1.0);
            for (Eigen::Index k = 0; k < K; ++k) {
                cplx num = 0.0;
                const cplx* v = V.col(k).data();
                for (int j = 0; j < n; ++j)
                    num += v[j] * c[j];
                vx[k] = pre * num * inv_den;
                out.value(t, k) = vx[k];
            }
            if (!with_derivative)
                continue;

            const auto& near = targets.near[t];
            const bool stab = opts.stabilize && !near.empty();
            if (stab)
                for (int j : near)
                    is_near[j] = 1;
            for (Eigen::Index k = 0; k < K; ++k) {
                const cplx* v = V.col(k).data();
                cplx acc = 0.0;
                if (stab) {
                    for (int j = 0; j < n; ++j)
                        if (!is_near[j])
                            acc += (v[j] - vx[k]) * c[j] * r[j];
                    for (int j : near) {
                        cplx s = 0.0, diff;
                        if (anchor) {
                            const cplx vya = v[j] * (y[j] - anchor->point());
                            for (int l = 0; l < n; ++l)
                                if (l != j)
                                    s += (vya * q[l] - v[l]) * c[l];
                            diff = pre * (s * inv_den - (y[j] - x) * v[j]);
                        } else {
                            for (int l = 0; l < n; ++l)
                                if (l != j)
                                    s += (v[j] - v[l]) * c[l];
                            diff = s * inv_den;
                        }
                        acc += diff * c[j] * r[j];
                    }
                } else {
                    for (int j = 0; j < n; ++j)
                        acc += (v[j] - vx[k]) * c[j] * r[j];
                }
                out.derivative(t, k) = pre * acc * inv_den;
            }
            if (stab)
                for (int j : near)
                    is_near[j] = 0;
        }
    }
    return out;
}

namespace {

Eigen::MatrixXcd column(std::span<const cplx> v)
{
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(v.size()), 1);
    for (std::size_t j = 0; j < v.size(); ++j)
        m(static_cast<Eigen::Index>(j), 0) = v[j];
    return m;
}

std::vector<cplx> to_vector(const Eigen::MatrixXcd& m)
{
    return {m.data(), m.data() + m.rows()};
}

void require_side(const TargetBatch& t, Side s)
{
    if (t.side != s)
        throw InvalidArgument("cauchy: target batch side mismatch");
}

} // namespace

std::vector<cplx> cauchy_value_interior(const Curve& curve, std::span<const cplx> v_minus,
                                        const TargetBatch& targets, const CauchyOptions& opts)
{
    require_side(targets, Side::interior);
    return to_vector(cauchy_evaluate(curve, column(v_minus), targets, nullptr, opts, false).value);
}

std::vector<cplx> cauchy_value_exterior(const Curve& curve, std::span<const cplx> v_plus,
                                        const TargetBatch& targets, const ExteriorAnchor& anchor,
                                        const CauchyOptions& opts)
{
    require_side(targets, Side::exterior);
    return to_vector(cauchy_evaluate(curve, column(v_plus), targets, &anchor, opts, false).value);
}

std::vector<cplx> cauchy_derivative_interior(const Curve& curve, std::span<const cplx> v_minus,
                                             const TargetBatch& targets, const CauchyOptions& opts)
{
    require_side(targets, Side::interior);
    return to_vector(
        cauchy_evaluate(curve, column(v_minus), targets, nullptr, opts, true).derivative);
}

std::vector<cplx> cauchy_derivative_exterior(const Curve& curve, std::span<const cplx> v_plus,
                                             const TargetBatch& targets,
                                             const ExteriorAnchor& anchor,
                                             const CauchyOptions& opts)
{
    require_side(targets, Side::exterior);
    return to_vector(
        cauchy_evaluate(curve, column(v_plus), targets, &anchor, opts, true).derivative);
}

} // namespace closelp
