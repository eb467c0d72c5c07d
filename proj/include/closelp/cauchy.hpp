#pragma once

#include "closelp/curve.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace closelp {

struct CauchyOptions {
    double near_distance = 1e-2; // delta: nodes closer than this get the compensated difference
    bool stabilize = true;       // false gives the plain derivative formula (for comparison runs)
    double snap_rtol = 1e-15;    // relative distance below which a target is treated as a node
};

// Interior point a used by the exterior formulas through p(x) = 1/(x - a).
class ExteriorAnchor {
public:
    // Throws InvalidArgument unless a is enclosed and at least
    // min_fraction * diameter away from every node.
    ExteriorAnchor(const Curve& curve, cplx a, double min_fraction = 0.05);
    // Node centroid.
    static ExteriorAnchor centroid(const Curve& curve, double min_fraction = 0.05);

    cplx point() const { return a_; }

private:
    cplx a_;
};

struct TargetBatch {
    std::vector<cplx> points;
    Side side = Side::interior;
    std::vector<int> node_hit;           // node index or -1
    std::vector<std::vector<int>> near;  // nodes with |y_j - x| < delta

    static TargetBatch make(const Curve& curve, std::span<const cplx> points, Side side,
                            const CauchyOptions& opts = {});
    std::size_t size() const { return points.size(); }
};

// Values (and optionally derivatives) of K holomorphic functions given
// their boundary limits as the K columns of `data` (N x K).
struct HolomorphicValues {
    Eigen::MatrixXcd value;      // M x K
    Eigen::MatrixXcd derivative; // M x K, empty when not requested
};

HolomorphicValues cauchy_evaluate(const Curve& curve, const Eigen::MatrixXcd& data,
                                  const TargetBatch& targets, const ExteriorAnchor* anchor,
                                  const CauchyOptions& opts, bool with_derivative);

std::vector<cplx> cauchy_value_interior(const Curve& curve, std::span<const cplx> v_minus,
                                        const TargetBatch& targets, const CauchyOptions& opts = {});
std::vector<cplx> cauchy_value_exterior(const Curve& curve, std::span<const cplx> v_plus,
                                        const TargetBatch& targets, const ExteriorAnchor& anchor,
                                        const CauchyOptions& opts = {});
std::vector<cplx> cauchy_derivative_interior(const Curve& curve, std::span<const cplx> v_minus,
                                             const TargetBatch& targets,
                                             const CauchyOptions& opts = {});
std::vector<cplx> cauchy_derivative_exterior(const Curve& curve, std::span<const cplx> v_plus,
                                             const TargetBatch& targets,
                                             const ExteriorAnchor& anchor,
                                             const CauchyOptions& opts = {});

// (1/2 pi i) sum_j dy_j / (y_j - x): ~1 inside, ~0 outside away from the curve.
cplx cauchy_winding(const Curve& curve, cplx x);

} // namespace closelp
