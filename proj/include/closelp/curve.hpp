#pragma once

#include "closelp/fourier.hpp"
#include "closelp/types.hpp"

#include <span>
#include <variant>
#include <vector>

namespace closelp {

// r(s) = 1 + amplitude*cos(frequency*s), Z(s) = r(s) e^{is}
struct StarShape {
    double amplitude = 0.3;
    int frequency = 5;
};

// Z(s) = a cos s + i b sin s
struct EllipseShape {
    double a = 1.0;
    double b = 1.0;
};

// Applied as Z -> center + scale * e^{i angle} Z.
struct Placement {
    cplx center{0.0, 0.0};
    double angle = 0.0;
    double scale = 1.0;
};

struct CurveSpec {
    std::variant<StarShape, EllipseShape> shape;
    Placement placement;
    int n = 0;
};

struct CurvePoint {
    cplx z, dz, ddz;
};

// Analytic Z, Z', Z'' of a family curve at parameter s (spec.n is ignored).
CurvePoint evaluate_curve(const CurveSpec& spec, double s);

struct GeometricData {
    std::vector<cplx> d_nodes; // Z'
    std::vector<cplx> accel;   // Z''
    std::vector<double> speed;
    std::vector<cplx> normals;
    std::vector<double> curvature;
};

// Geometry from node samples alone (spectral Z', Z'').
GeometricData geometric_data(std::span<const cplx> z);

struct CurveProjection {
    double param;     // s of the closest point
    cplx point;       // Z(s)
    double distance;  // |x - Z(s)|
    Side side;
};

class Curve {
public:
    static Curve analytic(const CurveSpec& spec);
    static Curve from_samples(std::vector<cplx> nodes);

    int size() const { return n_; }
    double param(int j) const { return 2.0 * pi * j / n_; }

    const std::vector<cplx>& nodes() const { return z_; }
    const std::vector<cplx>& d_nodes() const { return dz_; }
    const std::vector<cplx>& accel() const { return ddz_; }
    const std::vector<double>& weights() const { return w_; }
    const std::vector<double>& speed() const { return speed_; }
    const std::vector<cplx>& normals() const { return normal_; }
    const std::vector<double>& curvature() const { return kappa_; }
    // Complex line element dy_j = Z'(s_j) 2pi/N = i n_j w_j.
    const std::vector<cplx>& line_elements() const { return dy_; }

    double perimeter() const;
    cplx centroid() const;  // mean of the nodes
    double diameter() const;

    // Trigonometric interpolant of the node samples (or its derivative).
    cplx point_at(double s, int order = 0) const { return interp_(s, order); }

    CurveProjection project(cplx x) const;
    Side side_of(cplx x) const { return project(x).side; }

    // Same curve sampled at m points (trig resampling of the nodes).
    Curve resampled(int m) const;

private:
    Curve(std::vector<cplx> z, std::vector<cplx> dz, std::vector<cplx> ddz);

    int n_ = 0;
    std::vector<cplx> z_, dz_, ddz_, normal_, dy_;
    std::vector<double> w_, speed_, kappa_;
    TrigInterpolant interp_;
    std::vector<cplx> fine_; // dense samples for projection seeds
};

} // namespace closelp
