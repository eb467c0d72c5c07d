#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace closelp {

using LinearMap = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct GmresOptions {
    double rtol = 1e-12;
    int max_iter = 2000;
};

struct GmresResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double relative_residual = 0.0; // ||b - A x|| / ||b||, recomputed at exit
    bool converged = false;
    std::vector<double> history;    // Arnoldi residual estimates
};

// Unrestarted, unpreconditioned GMRES (modified Gram-Schmidt, Givens rotations).
GmresResult gmres(const LinearMap& apply, const Eigen::VectorXd& b, const GmresOptions& opts = {});

} // namespace closelp
