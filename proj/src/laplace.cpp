#include "closelp/laplace.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

namespace closelp {

ProductQuadWeights product_quad_weights(int n)
{
    if (n < 2 || n % 2)
        throw InvalidArgument("product_quad_weights: N must be even");
    std::vector<cplx> g(n, 0.0);
    for (int m = 1; m <= n / 2; ++m)
        g[m] = (m == n / 2 ? 0.5 : 1.0) / m;
    Eigen::FFT<double> fft;
    std::vector<cplx> r;
    fft.fwd(r, g);
    for (auto& v : r)
        v *= -2.0 * pi / n;
    return {n, std::move(r)};
}

std::vector<cplx> branch_unwrap(std::span<const cplx> values)
{
    std::vector<cplx> out(values.begin(), values.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        const double jump = out[i].imag() - out[i - 1].imag();
        out[i] -= cplx(0.0, 2.0 * pi * std::round(jump / (2.0 * pi)));
    }
    return out;
}

struct LaplaceEvaluator::SlpTables {
    Eigen::MatrixXcd interior;   // v^- = interior * tau
    Eigen::MatrixXcd exterior;   // v^+ without the total-charge terms
    std::vector<cplx> log_anchor; // log(1/(a - y_k)), unwrapped along k
    Eigen::RowVectorXcd mean;    // (1/2 pi i) dy_j / (y_j - a): picks out v at infinity
};

LaplaceEvaluator::LaplaceEvaluator(Curve curve, LaplaceOptions opts)
    : curve_(std::move(curve)), opts_(opts), slp_once_(std::make_unique<std::once_flag>())
{
    try {
        anchor_ = opts_.anchor ? ExteriorAnchor(curve_, *opts_.anchor, opts_.anchor_min_fraction)
                               : ExteriorAnchor::centroid(curve_, opts_.anchor_min_fraction);
    } catch (const InvalidArgument& e) {
        anchor_error_ = e.what();
    }
    const int n = curve_.size();
    const auto& y = curve_.nodes();
    const auto& dy = curve_.line_elements();
    cauchy_.resize(n, n);
    cauchy_rowsum_.resize(n);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx c = j == k ? cplx(0.0) : dy[j] * recip(y[j] - y[k]);
            cauchy_(k, j) = c;
            s += c;
        }
        cauchy_rowsum_(k) = s;
    }
}

LaplaceEvaluator::~LaplaceEvaluator() = default;
LaplaceEvaluator::LaplaceEvaluator(LaplaceEvaluator&&) noexcept = default;
LaplaceEvaluator& LaplaceEvaluator::operator=(LaplaceEvaluator&&) noexcept = default;

const ExteriorAnchor& LaplaceEvaluator::anchor() const
{
    if (!anchor_)
        throw InvalidArgument(anchor_error_);
    return *anchor_;
}

TargetBatch LaplaceEvaluator::targets(std::span<const cplx> points, Side side) const
{
    return TargetBatch::make(curve_, points, side, opts_.cauchy);
}

const LaplaceEvaluator::SlpTables& LaplaceEvaluator::slp_tables() const
{
    std::call_once(*slp_once_, [this] {
        auto t = std::make_unique<SlpTables>();
        const int n = curve_.size();
        const auto& y = curve_.nodes();
        const auto& dz = curve_.d_nodes();
        const auto& w = curve_.weights();
        const auto& sp = curve_.speed();
        const auto R = product_quad_weights(n).r;

        std::vector<cplx> e(n), diag(n);
        for (int k = 0; k < n; ++k) {
            e[k] = std::polar(1.0, curve_.param(k));
            diag[k] = std::log(I * e[k] / dz[k]);
        }
        diag = branch_unwrap(diag);

        // Smooth kernel log((e^{is_k} - e^{is_j}) / (y_k - y_j)), unwrapped
        // along each row starting from its diagonal.
        Eigen::MatrixXcd K(n, n);
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n; ++k) {
            cplx prev = diag[k];
            K(k, k) = prev;
            for (int step = 1; step < n; ++step) {
                const int j = (k + step) % n;
                cplx v = std::log((e[k] - e[j]) / (y[k] - y[j]));
                v -= cplx(0.0, 2.0 * pi * std::round((v.imag() - prev.imag()) / (2.0 * pi)));
                K(k, j) = v;
                prev = v;
            }
        }

        t->interior.resize(n, n);
        t->exterior.resize(n, n);
        const double c = 1.0 / (2.0 * pi);
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                const cplx smooth = K(k, j) * w[j];
                t->interior(k, j) = c * (smooth - R[(j - k + n) % n] * sp[j]);
                t->exterior(k, j) = c * (smooth - R[(k - j + n) % n] * sp[j]);
            }
        }

        if (anchor_) {
            const cplx a = anchor_->point();
            std::vector<cplx> la(n);
            t->mean.resize(n);
            const auto& dy = curve_.line_elements();
            for (int k = 0; k < n; ++k) {
                la[k] = std::log(recip(a - y[k]));
                t->mean(k) = dy[k] * recip(y[k] - a) / (2.0 * pi * I);
            }
            t->log_anchor = branch_unwrap(la);
        }
        slp_ = std::move(t);
    });
    return *slp_;
}

const Eigen::MatrixXcd& LaplaceEvaluator::slp_interior_matrix() const
{
    return slp_tables().interior;
}

Eigen::MatrixXcd LaplaceEvaluator::node_derivative_matrix() const
{
    const int n = curve_.size();
    const auto& dy = curve_.line_elements();
    Eigen::MatrixXcd B = cauchy_;
    for (int i = 0; i < n; ++i) {
        B(i, i) = -cauchy_rowsum_(i);
        B.row(i) *= -recip(dy[i]);
    }
    return B;
}

Eigen::MatrixXcd LaplaceEvaluator::dlp_boundary(const Eigen::MatrixXcd& tau, Side side) const
{
    const int n = curve_.size();
    if (tau.rows() != n)
        throw InvalidArgument("dlp_boundary: density length must match curve nodes");
    Eigen::MatrixXcd v = cauchy_ * tau;
    for (Eigen::Index col = 0; col < tau.cols(); ++col) {
        std::vector<cplx> t(tau.col(col).data(), tau.col(col).data() + n);
        const auto dt = spectral_derivative(std::span<const cplx>(t), 1);
        for (int k = 0; k < n; ++k) {
            const cplx sum = v(k, col) - t[k] * cauchy_rowsum_(k);
            cplx val = -t[k] - sum / (2.0 * pi * I) - dt[k] / (I * static_cast<double>(n));
            if (side == Side::exterior)
                val += t[k];
            v(k, col) = val;
        }
    }
    return v;
}

Eigen::MatrixXcd LaplaceEvaluator::slp_boundary(const Eigen::MatrixXd& tau, Side side,
                                                Eigen::VectorXd* charges) const
{
    const int n = curve_.size();
    if (tau.rows() != n)
        throw InvalidArgument("slp_boundary: density length must match curve nodes");
    const auto& tab = slp_tables();
    const Eigen::MatrixXcd tc = tau.cast<cplx>();
    if (side == Side::interior)
        return tab.interior * tc;

    Eigen::MatrixXcd v = tab.exterior * tc;
    const auto& w = curve_.weights();
    double wsum = 0.0;
    for (double x : w)
        wsum += x;
    if (charges)
        charges->resize(tau.cols());
    for (Eigen::Index col = 0; col < tau.cols(); ++col) {
        double T = 0.0;
        for (int j = 0; j < n; ++j)
            T += w[j] * tau(j, col);
        if (charges)
            (*charges)(col) = T;
        if (std::abs(T) > opts_.charge_threshold * wsum)
            for (int k = 0; k < n; ++k)
                v(k, col) += T / (2.0 * pi * I) * curve_.param(k);
    }
    return v;
}

HolomorphicValues LaplaceEvaluator::dlp(const Eigen::MatrixXcd& tau, const TargetBatch& targets,
                                        bool with_derivative) const
{
    const Eigen::MatrixXcd v = dlp_boundary(tau, targets.side);
    const ExteriorAnchor* a = targets.side == Side::exterior ? &anchor() : nullptr;
    return cauchy_evaluate(curve_, v, targets, a, opts_.cauchy, with_derivative);
}

HolomorphicValues LaplaceEvaluator::slp(const Eigen::MatrixXd& tau, const TargetBatch& targets,
                                        bool with_derivative) const
{
    if (targets.side == Side::interior) {
        const Eigen::MatrixXcd v = slp_boundary(tau, Side::interior);
        return cauchy_evaluate(curve_, v, targets, nullptr, opts_.cauchy, with_derivative);
    }

    // Exterior: take out the monopole (T/2pi) log(1/(a - x)) so the rest
    // decays, evaluate, then add it back.
    const auto& a = anchor();
    const auto& tab = slp_tables();
    const int n = curve_.size();
    Eigen::VectorXd T;
    Eigen::MatrixXcd w = slp_boundary(tau, Side::exterior, &T);
    double wsum = 0.0;
    for (double x : curve_.weights())
        wsum += x;
    std::vector<bool> active(tau.cols());
    for (Eigen::Index col = 0; col < tau.cols(); ++col) {
        active[col] = std::abs(T(col)) > opts_.charge_threshold * wsum;
        if (active[col])
            for (int k = 0; k < n; ++k)
                w(k, col) -= T(col) / (2.0 * pi) * tab.log_anchor[k];
        const cplx w_inf = (tab.mean * w.col(col))(0);
        w.col(col).array() -= w_inf;
    }
    HolomorphicValues out = cauchy_evaluate(curve_, w, targets, &a, opts_.cauchy, with_derivative);
    for (Eigen::Index col = 0; col < tau.cols(); ++col) {
        if (!active[col])
            continue;
        const double c = T(col) / (2.0 * pi);
        for (std::size_t t = 0; t < targets.size(); ++t) {
            const cplx d = a.point() - targets.points[t];
            out.value(t, col) += c * std::log(recip(d));
            if (with_derivative)
                out.derivative(t, col) += c * recip(d);
        }
    }
    return out;
}

namespace {

Eigen::MatrixXcd column(std::span<const cplx> v)
{
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(v.size()), 1);
    for (std::size_t j = 0; j < v.size(); ++j)
        m(j, 0) = v[j];
    return m;
}

Eigen::MatrixXd column(std::span<const double> v)
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(v.size()), 1);
    for (std::size_t j = 0; j < v.size(); ++j)
        m(j, 0) = v[j];
    return m;
}

} // namespace

PotentialResult to_potential(const HolomorphicValues& h, Eigen::Index col)
{
    PotentialResult r;
    const Eigen::Index m = h.value.rows();
    r.u.resize(m);
    for (Eigen::Index t = 0; t < m; ++t)
        r.u[t] = h.value(t, col).real();
    if (h.derivative.size()) {
        r.gradient.resize(m);
        for (Eigen::Index t = 0; t < m; ++t)
            r.gradient[t] = std::conj(h.derivative(t, col));
    }
    return r;
}

std::vector<cplx> dlp_boundary_data(const Curve& curve, std::span<const cplx> tau, Side side)
{
    LaplaceEvaluator ev(curve);
    const Eigen::MatrixXcd v = ev.dlp_boundary(column(tau), side);
    return {v.data(), v.data() + v.rows()};
}

SlpBoundaryData slp_boundary_data(const Curve& curve, std::span<const double> tau, Side side)
{
    LaplaceEvaluator ev(curve);
    Eigen::VectorXd T;
    const Eigen::MatrixXcd v = ev.slp_boundary(column(tau), side, &T);
    SlpBoundaryData d;
    d.values.assign(v.data(), v.data() + v.rows());
    d.side = side;
    if (side == Side::exterior) {
        d.total_charge = T(0);
    } else {
        for (int j = 0; j < curve.size(); ++j)
            d.total_charge += curve.weights()[j] * tau[j];
    }
    return d;
}

PotentialResult laplace_dlp_eval(const Curve& curve, std::span<const double> tau,
                                 std::span<const cplx> targets, Side side,
                                 const LaplaceOptions& opts)
{
    LaplaceEvaluator ev(curve, opts);
    const auto batch = ev.targets(targets, side);
    return to_potential(ev.dlp(column(tau).cast<cplx>(), batch, true));
}

ComplexPotential laplace_dlp_eval_complex(const Curve& curve, std::span<const cplx> tau,
                                          std::span<const cplx> targets, Side side,
                                          const LaplaceOptions& opts)
{
    LaplaceEvaluator ev(curve, opts);
    const auto batch = ev.targets(targets, side);
    const auto h = ev.dlp(column(tau), batch, true);
    ComplexPotential r;
    r.value.assign(h.value.data(), h.value.data() + h.value.rows());
    r.derivative.assign(h.derivative.data(), h.derivative.data() + h.derivative.rows());
    return r;
}

PotentialResult laplace_slp_eval(const Curve& curve, std::span<const double> tau,
                                 std::span<const cplx> targets, Side side,
                                 const LaplaceOptions& opts)
{
    LaplaceEvaluator ev(curve, opts);
    const auto batch = ev.targets(targets, side);
    return to_potential(ev.slp(column(tau), batch, true));
}

PotentialResult laplace_slp_native(const Curve& curve, std::span<const double> tau,
                                   std::span<const cplx> targets)
{
    const auto& y = curve.nodes();
    const auto& w = curve.weights();
    const int n = curve.size();
    PotentialResult r;
    r.u.resize(targets.size());
    r.gradient.resize(targets.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(targets.size()); ++t) {
        double u = 0.0;
        cplx g = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx d = targets[t] - y[j];
            const double rho2 = std::norm(d);
            u -= 0.5 * std::log(rho2) * tau[j] * w[j];
            g -= d / rho2 * tau[j] * w[j];
        }
        r.u[t] = u / (2.0 * pi);
        r.gradient[t] = g / (2.0 * pi);
    }
    return r;
}

PotentialResult laplace_dlp_native(const Curve& curve, std::span<const double> tau,
                                   std::span<const cplx> targets)
{
    const auto& y = curve.nodes();
    const auto& dy = curve.line_elements();
    const int n = curve.size();
    PotentialResult r;
    r.u.resize(targets.size());
    r.gradient.resize(targets.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(targets.size()); ++t) {
        cplx v = 0.0, dv = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx q = recip(targets[t] - y[j]);
            v += tau[j] * dy[j] * q;
            dv -= tau[j] * dy[j] * q * q;
        }
        v /= 2.0 * pi * I;
        dv /= 2.0 * pi * I;
        r.u[t] = v.real();
        r.gradient[t] = std::conj(dv);
    }
    return r;
}

} // namespace closelp
