#pragma once

#include "closelp/cauchy.hpp"
#include "closelp/curve.hpp"

#include <Eigen/Dense>

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace closelp {

// Product-quadrature weights for the periodic log kernel:
// sum_j R_{(j-k) mod N} f_j ~ int_0^2pi log(1 - e^{i(s_k - s)}) f(s) ds
//   R_l = -(2 pi/N) sum_{m=1}^{N/2} c_m e^{-i m s_l} / m,  c_{N/2} = 1/2, else 1.
struct ProductQuadWeights {
    int n = 0;
    std::vector<cplx> r;
};

ProductQuadWeights product_quad_weights(int n);

// Shifts each entry by a multiple of 2 pi i so that consecutive imaginary
// parts differ by at most pi.
std::vector<cplx> branch_unwrap(std::span<const cplx> values);

struct SlpBoundaryData {
    std::vector<cplx> values; // v^-_k or v^+_k
    double total_charge = 0.0; // T = sum_j w_j tau_j
    Side side = Side::interior;
};

// u and grad u; the gradient is packed as du/dx + i du/dy.
struct PotentialResult {
    std::vector<double> u;
    std::vector<cplx> gradient;
};

// Holomorphic v with u = Re v, and v' (grad u = conj(v')).
struct ComplexPotential {
    std::vector<cplx> value;
    std::vector<cplx> derivative;
};

struct LaplaceOptions {
    CauchyOptions cauchy;
    std::optional<cplx> anchor;          // defaults to the node centroid
    double anchor_min_fraction = 0.05;
    double charge_threshold = 1e-13;     // |T| below this times sum(w) is treated as zero
};

// Per-curve precomputation for Laplace close evaluation. The SLP kernel
// tables (O(N^2) logarithms) are built on first use.
class LaplaceEvaluator {
public:
    explicit LaplaceEvaluator(Curve curve, LaplaceOptions opts = {});
    ~LaplaceEvaluator();
    LaplaceEvaluator(LaplaceEvaluator&&) noexcept;
    LaplaceEvaluator& operator=(LaplaceEvaluator&&) noexcept;

    const Curve& curve() const { return curve_; }
    const LaplaceOptions& options() const { return opts_; }
    const ExteriorAnchor& anchor() const;

    TargetBatch targets(std::span<const cplx> points, Side side) const;

    // Step 1 for the columns of tau.
    Eigen::MatrixXcd dlp_boundary(const Eigen::MatrixXcd& tau, Side side) const;
    Eigen::MatrixXcd slp_boundary(const Eigen::MatrixXd& tau, Side side,
                                  Eigen::VectorXd* charges = nullptr) const;

    // Holomorphic potentials for several densities at once.
    HolomorphicValues dlp(const Eigen::MatrixXcd& tau, const TargetBatch& targets,
                          bool with_derivative) const;
    HolomorphicValues slp(const Eigen::MatrixXd& tau, const TargetBatch& targets,
                          bool with_derivative) const;

    // Interior SLP boundary map v^- = A tau (complex N x N).
    const Eigen::MatrixXcd& slp_interior_matrix() const;
    // (B v)_i = v'(y_i) for interior boundary data v (node-hit derivative formula).
    Eigen::MatrixXcd node_derivative_matrix() const;

private:
    struct SlpTables;
    const SlpTables& slp_tables() const;

    Curve curve_;
    LaplaceOptions opts_;
    std::optional<ExteriorAnchor> anchor_;
    std::string anchor_error_;
    Eigen::MatrixXcd cauchy_;        // dy_j / (y_j - y_k), zero diagonal
    Eigen::VectorXcd cauchy_rowsum_;
    mutable std::unique_ptr<SlpTables> slp_;
    mutable std::unique_ptr<std::once_flag> slp_once_;
};

std::vector<cplx> dlp_boundary_data(const Curve& curve, std::span<const cplx> tau, Side side);
SlpBoundaryData slp_boundary_data(const Curve& curve, std::span<const double> tau, Side side);

PotentialResult laplace_dlp_eval(const Curve& curve, std::span<const double> tau,
                                 std::span<const cplx> targets, Side side,
                                 const LaplaceOptions& opts = {});
ComplexPotential laplace_dlp_eval_complex(const Curve& curve, std::span<const cplx> tau,
                                          std::span<const cplx> targets, Side side,
                                          const LaplaceOptions& opts = {});
PotentialResult laplace_slp_eval(const Curve& curve, std::span<const double> tau,
                                 std::span<const cplx> targets, Side side,
                                 const LaplaceOptions& opts = {});

// Plain N-point trapezoid rule, for comparison.
PotentialResult laplace_slp_native(const Curve& curve, std::span<const double> tau,
                                   std::span<const cplx> targets);
PotentialResult laplace_dlp_native(const Curve& curve, std::span<const double> tau,
                                   std::span<const cplx> targets);

PotentialResult to_potential(const HolomorphicValues& h, Eigen::Index column = 0);

} // namespace closelp
