#pragma once

#include "closelp/stokes.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace closelp {

enum class Equation { laplace, stokes };
enum class Condition { dirichlet, neumann };
enum class Representation { dlp, slp, dlp_plus_slp };

// Laplace boundary operators (N x N).
Eigen::MatrixXd laplace_dlp_matrix(const Curve& curve);
Eigen::MatrixXd laplace_dlpT_matrix(const Curve& curve);

// Stokes boundary operators (2N x 2N, components interleaved per node).
struct StokesBoundaryMatrices {
    Eigen::MatrixXd D;  // double layer
    Eigen::MatrixXd DT; // traction of the single layer
    Eigen::MatrixXd S;  // single layer
};

Eigen::MatrixXd stokes_dlp_matrix(const Curve& curve);
Eigen::MatrixXd stokes_dlpT_matrix(const Curve& curve);
// Single layer at the nodes. product_quadrature: log part from the Laplace
// product weights, smooth (r x r)/rho^2 part by the trapezoid rule.
// node_limit: Stokes SLP close evaluation at the nodes themselves.
enum class SlpMatrixScheme { product_quadrature, node_limit };
Eigen::MatrixXd stokes_slp_matrix(const LaplaceEvaluator& laplace,
                                  SlpMatrixScheme scheme = SlpMatrixScheme::product_quadrature);
StokesBoundaryMatrices stokes_boundary_matrices(const Curve& curve);

// Interleaved real <-> packed complex 2-vectors.
std::vector<double> interleave(std::span<const cplx> v);
std::vector<cplx> deinterleave(std::span<const double> v);

struct BvpSpec {
    Equation equation = Equation::laplace;
    Condition condition = Condition::dirichlet;
    Side side = Side::interior;
    std::vector<Curve> curves;
    // Per curve: N values (Laplace) or 2N interleaved values (Stokes).
    std::vector<std::vector<double>> data;
    SlpMatrixScheme slp_matrix = SlpMatrixScheme::product_quadrature; // Stokes exterior Dirichlet

    void validate() const;
};

Representation representation_for(Equation eq, Condition cond, Side side);

struct NystromSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    Representation representation = Representation::dlp;
};

NystromSystem assemble_system(const BvpSpec& spec);

struct BvpSolution {
    std::vector<double> density;
    double relative_residual = 0.0;
    Eigen::Index rank = 0;
    bool certified = false;        // residual <= 1e-10 relative
    double compatibility = 0.0;    // sum_j g_j w_j (interior Laplace Neumann only)

    void check() const;            // throws Error when not certified
};

// Dense rank-tolerant least squares, tolerance 1e-12 relative.
BvpSolution solve_bvp(const BvpSpec& spec);

struct FieldValues {
    std::vector<double> u;         // Laplace
    std::vector<cplx> gradient;    // Laplace, du/dx + i du/dy
    std::vector<cplx> velocity;    // Stokes
};

// Evaluates the representation of a single-curve solution at points on spec.side.
FieldValues evaluate_solution(const BvpSpec& spec, std::span<const double> density,
                              std::span<const cplx> points, const StokesOptions& opts = {});
// Same representation, plain trapezoid rule.
FieldValues evaluate_solution_native(const BvpSpec& spec, std::span<const double> density,
                                     std::span<const cplx> points);

} // namespace closelp
