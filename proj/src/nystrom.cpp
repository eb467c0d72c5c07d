#include "closelp/nystrom.hpp"

#include <cmath>

namespace closelp {

Eigen::MatrixXd laplace_dlp_matrix(const Curve& c)
{
    const int n = c.size();
    const auto& y = c.nodes();
    const auto& nr = c.normals();
    const auto& w = c.weights();
    Eigen::MatrixXd D(n, n);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j == k) {
                D(k, k) = -c.curvature()[k] * w[k] / (4.0 * pi);
                continue;
            }
            const cplx r = y[k] - y[j];
            const double rn = r.real() * nr[j].real() + r.imag() * nr[j].imag();
            D(k, j) = rn / std::norm(r) * w[j] / (2.0 * pi);
        }
    }
    return D;
}

Eigen::MatrixXd laplace_dlpT_matrix(const Curve& c)
{
    const int n = c.size();
    const auto& y = c.nodes();
    const auto& nr = c.normals();
    const auto& w = c.weights();
    Eigen::MatrixXd D(n, n);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j == k) {
                D(k, k) = -c.curvature()[k] * w[k] / (4.0 * pi);
                continue;
            }
            const cplx r = y[k] - y[j];
            const double rn = r.real() * nr[k].real() + r.imag() * nr[k].imag();
            D(k, j) = -rn / std::norm(r) * w[j] / (2.0 * pi);
        }
    }
    return D;
}

namespace {

// (sign/pi) (r.n)(r (x) r)/rho^4 w_j with n = n_j (dlp) or n_k (traction).
Eigen::MatrixXd stokes_dlp_like(const Curve& c, bool traction)
{
    const int n = c.size();
    const auto& y = c.nodes();
    const auto& nr = c.normals();
    const auto& w = c.weights();
    const double sign = traction ? -1.0 : 1.0;
    Eigen::MatrixXd D(2 * n, 2 * n);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            double a11, a12, a22;
            if (j == k) {
                const cplx t = c.d_nodes()[k] / c.speed()[k];
                const double f = -c.curvature()[k] * w[k] / (2.0 * pi);
                a11 = f * t.real() * t.real();
                a12 = f * t.real() * t.imag();
                a22 = f * t.imag() * t.imag();
            } else {
                const cplx r = y[k] - y[j];
                const cplx nn = traction ? nr[k] : nr[j];
                const double rho2 = std::norm(r);
                const double rn = r.real() * nn.real() + r.imag() * nn.imag();
                const double f = sign * rn / (rho2 * rho2) * w[j] / pi;
                a11 = f * r.real() * r.real();
                a12 = f * r.real() * r.imag();
                a22 = f * r.imag() * r.imag();
            }
            D(2 * k, 2 * j) = a11;
            D(2 * k, 2 * j + 1) = a12;
            D(2 * k + 1, 2 * j) = a12;
            D(2 * k + 1, 2 * j + 1) = a22;
        }
    }
    return D;
}

} // namespace

Eigen::MatrixXd stokes_dlp_matrix(const Curve& curve)
{
    return stokes_dlp_like(curve, false);
}

Eigen::MatrixXd stokes_dlpT_matrix(const Curve& curve)
{
    return stokes_dlp_like(curve, true);
}

Eigen::MatrixXd stokes_slp_matrix(const LaplaceEvaluator& lap, SlpMatrixScheme scheme)
{
    const Curve& c = lap.curve();
    const int n = c.size();
    const Eigen::MatrixXcd& A = lap.slp_interior_matrix();
    const auto& y = c.nodes();
    Eigen::MatrixXd S(2 * n, 2 * n);
    if (scheme == SlpMatrixScheme::product_quadrature) {
        // (1/2) Re A carries the log part; (r x r)/rho^2 is smooth with limit t x t.
        const auto& w = c.weights();
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                const cplx r = k == j ? c.d_nodes()[k] : y[k] - y[j];
                const double f = w[j] / (4.0 * pi * std::norm(r));
                const double sv = 0.5 * A(k, j).real();
                S(2 * k, 2 * j) = sv + f * r.real() * r.real();
                S(2 * k, 2 * j + 1) = f * r.real() * r.imag();
                S(2 * k + 1, 2 * j) = f * r.real() * r.imag();
                S(2 * k + 1, 2 * j + 1) = sv + f * r.imag() * r.imag();
            }
        }
        return S;
    }
    const Eigen::MatrixXcd G = lap.node_derivative_matrix() * A;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const double sv = A(k, j).real();
            const double gx = G(k, j).real(), gy = -G(k, j).imag();
            const double d1 = y[j].real() - y[k].real();
            const double d2 = y[j].imag() - y[k].imag();
            S(2 * k, 2 * j) = 0.5 * (sv + gx * d1);
            S(2 * k, 2 * j + 1) = 0.5 * gx * d2;
            S(2 * k + 1, 2 * j) = 0.5 * gy * d1;
            S(2 * k + 1, 2 * j + 1) = 0.5 * (sv + gy * d2);
        }
    }
    return S;
}

StokesBoundaryMatrices stokes_boundary_matrices(const Curve& curve)
{
    LaplaceEvaluator lap(curve);
    return {stokes_dlp_matrix(curve), stokes_dlpT_matrix(curve), stokes_slp_matrix(lap)};
}

std::vector<double> interleave(std::span<const cplx> v)
{
    std::vector<double> out(2 * v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[2 * j] = v[j].real();
        out[2 * j + 1] = v[j].imag();
    }
    return out;
}

std::vector<cplx> deinterleave(std::span<const double> v)
{
    if (v.size() % 2)
        throw InvalidArgument("deinterleave: odd length");
    std::vector<cplx> out(v.size() / 2);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = {v[2 * j], v[2 * j + 1]};
    return out;
}

void BvpSpec::validate() const
{
    if (curves.empty())
        throw InvalidArgument("bvp: no curves");
    if (data.size() != curves.size())
        throw InvalidArgument("bvp: one data vector per curve required");
    const std::size_t per = equation == Equation::laplace ? 1 : 2;
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (data[i].size() != per * curves[i].size())
            throw InvalidArgument("bvp: data length does not match curve nodes");
}

Representation representation_for(Equation eq, Condition cond, Side side)
{
    if (cond == Condition::neumann)
        return Representation::slp;
    if (eq == Equation::stokes && side == Side::exterior)
        return Representation::dlp_plus_slp;
    return Representation::dlp;
}

NystromSystem assemble_system(const BvpSpec& spec)
{
    spec.validate();
    if (spec.curves.size() != 1)
        throw InvalidArgument("assemble_system: single curve only (use solve_multibody)");
    const Curve& c = spec.curves[0];
    const bool in = spec.side == Side::interior;
    NystromSystem sys;
    sys.representation = representation_for(spec.equation, spec.condition, spec.side);
    sys.rhs = Eigen::Map<const Eigen::VectorXd>(spec.data[0].data(),
                                                static_cast<Eigen::Index>(spec.data[0].size()));
    double shift;
    if (spec.equation == Equation::laplace) {
        if (spec.condition == Condition::dirichlet) {
            sys.matrix = laplace_dlp_matrix(c);
            shift = in ? -0.5 : 0.5;
        } else {
            sys.matrix = laplace_dlpT_matrix(c);
            shift = in ? 0.5 : -0.5;
        }
    } else if (spec.condition == Condition::neumann) {
        sys.matrix = stokes_dlpT_matrix(c);
        shift = in ? 0.5 : -0.5;
    } else if (in) {
        sys.matrix = stokes_dlp_matrix(c);
        shift = -0.5;
    } else {
        LaplaceEvaluator lap(c);
        sys.matrix = stokes_dlp_matrix(c) + stokes_slp_matrix(lap, spec.slp_matrix);
        shift = 0.5;
    }
    sys.matrix.diagonal().array() += shift;
    return sys;
}

void BvpSolution::check() const
{
    if (!certified)
        throw Error("bvp: residual " + std::to_string(relative_residual) +
                    " exceeds 1e-10 relative (inconsistent data or under-resolution)");
}

BvpSolution solve_bvp(const BvpSpec& spec)
{
    const NystromSystem sys = assemble_system(spec);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.matrix.rows(),
                                                               sys.matrix.cols());
    cod.setThreshold(1e-12);
    cod.compute(sys.matrix);
    const Eigen::VectorXd x = cod.solve(sys.rhs);
    BvpSolution sol;
    sol.density.assign(x.data(), x.data() + x.size());
    sol.rank = cod.rank();
    const double gnorm = sys.rhs.lpNorm<Eigen::Infinity>();
    const double res = (sys.matrix * x - sys.rhs).lpNorm<Eigen::Infinity>();
    sol.relative_residual = gnorm > 0.0 ? res / gnorm : res;
    sol.certified = sol.relative_residual <= 1e-10;
    if (spec.equation == Equation::laplace && spec.condition == Condition::neumann &&
        spec.side == Side::interior) {
        const auto& w = spec.curves[0].weights();
        for (std::size_t j = 0; j < w.size(); ++j)
            sol.compatibility += spec.data[0][j] * w[j];
    }
    return sol;
}

FieldValues evaluate_solution(const BvpSpec& spec, std::span<const double> density,
                              std::span<const cplx> points, const StokesOptions& opts)
{
    if (spec.curves.size() != 1)
        throw InvalidArgument("evaluate_solution: single curve only");
    const Curve& c = spec.curves[0];
    const Representation rep = representation_for(spec.equation, spec.condition, spec.side);
    FieldValues f;
    if (spec.equation == Equation::laplace) {
        const PotentialResult r = rep == Representation::dlp
                                      ? laplace_dlp_eval(c, density, points, spec.side, opts.laplace)
                                      : laplace_slp_eval(c, density, points, spec.side, opts.laplace);
        f.u = r.u;
        f.gradient = r.gradient;
        return f;
    }
    const auto sigma = deinterleave(density);
    StokesEvaluator ev(c, opts);
    const auto t = ev.prepare(points, spec.side);
    if (rep == Representation::slp) {
        f.velocity = ev.slp(sigma, t);
    } else {
        f.velocity = ev.dlp(sigma, t);
        if (rep == Representation::dlp_plus_slp) {
            const auto s = ev.slp(sigma, t);
            for (std::size_t i = 0; i < s.size(); ++i)
                f.velocity[i] += s[i];
        }
    }
    return f;
}

FieldValues evaluate_solution_native(const BvpSpec& spec, std::span<const double> density,
                                     std::span<const cplx> points)
{
    if (spec.curves.size() != 1)
        throw InvalidArgument("evaluate_solution_native: single curve only");
    const Curve& c = spec.curves[0];
    const Representation rep = representation_for(spec.equation, spec.condition, spec.side);
    FieldValues f;
    if (spec.equation == Equation::laplace) {
        const PotentialResult r = rep == Representation::dlp ? laplace_dlp_native(c, density, points)
                                                             : laplace_slp_native(c, density, points);
        f.u = r.u;
        f.gradient = r.gradient;
        return f;
    }
    const auto sigma = deinterleave(density);
    if (rep == Representation::slp) {
        f.velocity = stokes_slp_native(c, sigma, points);
    } else {
        f.velocity = stokes_dlp_native(c, sigma, points);
        if (rep == Representation::dlp_plus_slp) {
            const auto s = stokes_slp_native(c, sigma, points);
            for (std::size_t i = 0; i < s.size(); ++i)
                f.velocity[i] += s[i];
        }
    }
    return f;
}

} // namespace closelp
