#pragma once

#include "closelp/gmres.hpp"
#include "closelp/nystrom.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace closelp {

// Block operator for exterior Stokes Dirichlet on K bodies with
// u = sum_q (D + S) sigma_q. Densities are concatenated, interleaved per body.
class MultibodyOperator {
public:
    explicit MultibodyOperator(std::vector<Curve> curves, StokesOptions opts = {});

    Eigen::Index size() const { return offset_.back(); }
    int body_count() const { return static_cast<int>(ev_.size()); }
    const Curve& curve(int q) const { return ev_[q].curve(); }
    Eigen::Index offset(int q) const { return offset_[q]; }

    void apply(const Eigen::VectorXd& sigma, Eigen::VectorXd& out) const;

    // Velocity at points exterior to every body.
    std::vector<cplx> velocity(const Eigen::VectorXd& sigma, std::span<const cplx> points) const;

private:
    std::vector<StokesEvaluator> ev_;
    std::vector<Eigen::MatrixXd> diag_;                 // D + S + 1/2 per body
    std::vector<StokesEvaluator::Targets> others_;      // other bodies' nodes, per source
    std::vector<Eigen::Index> offset_;
};

struct MultibodySolution {
    std::vector<std::vector<double>> densities;
    GmresResult gmres;
};

MultibodySolution solve_multibody(const BvpSpec& spec, const GmresOptions& gmres_cfg = {},
                                  const StokesOptions& opts = {});

struct EllipseLayoutOptions {
    int count = 6;
    int n = 150;
    double min_gap = 1e-3;
    double semi_major_min = 0.25, semi_major_max = 0.35;
    double aspect_min = 1.5, aspect_max = 2.5;
    double spacing = 0.9; // home grid spacing before the bodies are pushed together
    std::uint64_t seed = 7;
};

struct EllipseLayout {
    std::vector<Curve> curves;
    std::vector<CurveSpec> specs;
    double min_gap = 0.0; // measured
};

// Deterministic: bodies start on a grid and each is slid toward the
// nearest placed body until its gap to the others equals min_gap.
EllipseLayout generate_ellipse_layout(const EllipseLayoutOptions& opts);

// Minimum distance between two closed curves (dense sampling plus local refinement).
double curve_gap(const Curve& a, const Curve& b);

} // namespace closelp
