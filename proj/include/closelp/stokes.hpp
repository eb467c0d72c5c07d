#pragma once

#include "closelp/laplace.hpp"

#include <span>
#include <utility>
#include <vector>

namespace closelp {

// 2-vectors (velocities, densities) are packed as u1 + i u2.

struct StokesOptions {
    double upsample = 2.2; // beta for the complex-density DLP term
    LaplaceOptions laplace;
};

// tau1 = (s1 + i s2) Re(n)/n, tau2 = (s1 + i s2) Im(n)/n
std::pair<std::vector<cplx>, std::vector<cplx>> complex_density_split(std::span<const cplx> sigma,
                                                                      std::span<const cplx> normals);

class StokesEvaluator {
public:
    struct Targets {
        std::vector<cplx> points;
        Side side = Side::interior;
        TargetBatch coarse, fine;
    };

    explicit StokesEvaluator(const Curve& curve, StokesOptions opts = {});

    const Curve& curve() const { return base_.curve(); }
    const Curve& fine_curve() const { return fine_.curve(); }
    const LaplaceEvaluator& laplace() const { return base_; }

    Targets prepare(std::span<const cplx> points, Side side) const;

    std::vector<cplx> slp(std::span<const cplx> sigma, const Targets& targets) const;
    std::vector<cplx> dlp(std::span<const cplx> sigma, const Targets& targets) const;

private:
    StokesOptions opts_;
    LaplaceEvaluator base_;
    LaplaceEvaluator fine_;
};

std::vector<cplx> stokes_slp_eval(const Curve& curve, std::span<const cplx> sigma,
                                  std::span<const cplx> targets, Side side,
                                  const StokesOptions& opts = {});
std::vector<cplx> stokes_dlp_eval(const Curve& curve, std::span<const cplx> sigma,
                                  std::span<const cplx> targets, Side side,
                                  const StokesOptions& opts = {});

// Plain N-point trapezoid rule, for comparison.
std::vector<cplx> stokes_slp_native(const Curve& curve, std::span<const cplx> sigma,
                                    std::span<const cplx> targets);
std::vector<cplx> stokes_dlp_native(const Curve& curve, std::span<const cplx> sigma,
                                    std::span<const cplx> targets);

} // namespace closelp
