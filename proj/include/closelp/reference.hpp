#pragma once

#include "closelp/curve.hpp"

#include <Eigen/Dense>

#include <vector>

namespace closelp {

enum class ReferenceKind { complex_pole, entire, harmonic_trig, stokeslet_sum };

struct Stokeslet {
    cplx position;
    cplx force; // f1 + i f2
};

// Closed-form reference solutions. Laplace kinds are u = Re v(z):
//   complex_pole:  v = sum_k 1/(z - b_k)
//   entire:        v = e^{i(1 + z)}
//   harmonic_trig: v = cos(k z), i.e. u = cos(k x) cosh(k y)
// stokeslet_sum is the Stokes flow of point forces (unit viscosity).
class ReferenceField {
public:
    static ReferenceField complex_pole(std::vector<cplx> poles);
    static ReferenceField entire();
    static ReferenceField harmonic_trig(double k = 1.0);
    static ReferenceField stokeslets(std::vector<Stokeslet> s);

    ReferenceKind kind() const { return kind_; }
    bool is_stokes() const { return kind_ == ReferenceKind::stokeslet_sum; }
    const std::vector<cplx>& poles() const { return poles_; }
    const std::vector<Stokeslet>& sources() const { return stokeslets_; }

    // Laplace
    cplx holomorphic(cplx z) const;
    cplx holomorphic_derivative(cplx z) const;
    double u(cplx z) const { return holomorphic(z).real(); }
    cplx gradient(cplx z) const { return std::conj(holomorphic_derivative(z)); }
    double normal_derivative(cplx z, cplx n) const;

    // Stokes
    cplx velocity(cplx x) const;
    double pressure(cplx x) const;
    Eigen::Matrix2d velocity_gradient(cplx x) const; // (i, j) = d u_i / d x_j
    cplx traction(cplx x, cplx n) const;             // -p n + (grad u + grad u^T) n

    // Throws InvalidArgument when a singularity lies on the evaluation side
    // (or within `margin` of the curve).
    void check_side(const Curve& curve, Side evaluation_side, double margin = 1e-3) const;

    // Boundary data at the nodes: Dirichlet values or Neumann derivatives /
    // tractions; Stokes data interleaved.
    std::vector<double> dirichlet_data(const Curve& curve) const;
    std::vector<double> neumann_data(const Curve& curve) const;

private:
    ReferenceKind kind_ = ReferenceKind::entire;
    std::vector<cplx> poles_;
    double k_ = 1.0;
    std::vector<Stokeslet> stokeslets_;
};

} // namespace closelp
