#include "closelp/reference.hpp"

#include <cmath>

namespace closelp {

ReferenceField ReferenceField::complex_pole(std::vector<cplx> poles)
{
    if (poles.empty())
        throw InvalidArgument("reference: at least one pole required");
    ReferenceField r;
    r.kind_ = ReferenceKind::complex_pole;
    r.poles_ = std::move(poles);
    return r;
}

ReferenceField ReferenceField::entire()
{
    return {};
}

ReferenceField ReferenceField::harmonic_trig(double k)
{
    ReferenceField r;
    r.kind_ = ReferenceKind::harmonic_trig;
    r.k_ = k;
    return r;
}

ReferenceField ReferenceField::stokeslets(std::vector<Stokeslet> s)
{
    if (s.empty())
        throw InvalidArgument("reference: at least one stokeslet required");
    ReferenceField r;
    r.kind_ = ReferenceKind::stokeslet_sum;
    r.stokeslets_ = std::move(s);
    return r;
}

cplx ReferenceField::holomorphic(cplx z) const
{
    switch (kind_) {
    case ReferenceKind::complex_pole: {
        cplx v = 0.0;
        for (const auto& b : poles_)
            v += 1.0 / (z - b);
        return v;
    }
    case ReferenceKind::entire:
        return std::exp(I * (1.0 + z));
    case ReferenceKind::harmonic_trig:
        return std::cos(k_ * z);
    default:
        throw InvalidArgument("reference: not a Laplace field");
    }
}

cplx ReferenceField::holomorphic_derivative(cplx z) const
{
    switch (kind_) {
    case ReferenceKind::complex_pole: {
        cplx v = 0.0;
        for (const auto& b : poles_)
            v -= 1.0 / ((z - b) * (z - b));
        return v;
    }
    case ReferenceKind::entire:
        return I * std::exp(I * (1.0 + z));
    case ReferenceKind::harmonic_trig:
        return -k_ * std::sin(k_ * z);
    default:
        throw InvalidArgument("reference: not a Laplace field");
    }
}

double ReferenceField::normal_derivative(cplx z, cplx n) const
{
    const cplx g = gradient(z);
    return g.real() * n.real() + g.imag() * n.imag();
}

cplx ReferenceField::velocity(cplx x) const
{
    if (!is_stokes())
        throw InvalidArgument("reference: not a Stokes field");
    cplx u = 0.0;
    for (const auto& s : stokeslets_) {
        const cplx r = x - s.position;
        const double rho2 = std::norm(r);
        const double rf = r.real() * s.force.real() + r.imag() * s.force.imag();
        u += -0.5 * std::log(rho2) * s.force + rf / rho2 * r;
    }
    return u / (4.0 * pi);
}

double ReferenceField::pressure(cplx x) const
{
    if (!is_stokes())
        throw InvalidArgument("reference: not a Stokes field");
    double p = 0.0;
    for (const auto& s : stokeslets_) {
        const cplx r = x - s.position;
        p += (r.real() * s.force.real() + r.imag() * s.force.imag()) / std::norm(r);
    }
    return p / (2.0 * pi);
}

Eigen::Matrix2d ReferenceField::velocity_gradient(cplx x) const
{
    if (!is_stokes())
        throw InvalidArgument("reference: not a Stokes field");
    Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
    for (const auto& s : stokeslets_) {
        const cplx rc = x - s.position;
        const double r[2] = {rc.real(), rc.imag()};
        const double f[2] = {s.force.real(), s.force.imag()};
        const double rho2 = std::norm(rc);
        const double rf = r[0] * f[0] + r[1] * f[1];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                G(i, j) += (-r[j] * f[i] + f[j] * r[i] + (i == j ? rf : 0.0)) / rho2 -
                           2.0 * rf * r[i] * r[j] / (rho2 * rho2);
    }
    return G / (4.0 * pi);
}

cplx ReferenceField::traction(cplx x, cplx n) const
{
    const Eigen::Matrix2d G = velocity_gradient(x);
    const Eigen::Matrix2d E = G + G.transpose();
    const Eigen::Vector2d nv(n.real(), n.imag());
    const Eigen::Vector2d t = -pressure(x) * nv + E * nv;
    return {t(0), t(1)};
}

void ReferenceField::check_side(const Curve& curve, Side evaluation_side, double margin) const
{
    std::vector<cplx> singular;
    if (kind_ == ReferenceKind::complex_pole)
        singular = poles_;
    for (const auto& s : stokeslets_)
        singular.push_back(s.position);
    for (const auto& p : singular) {
        const auto pr = curve.project(p);
        if (pr.side == evaluation_side || pr.distance < margin)
            throw InvalidArgument("reference: singularity on the evaluation side of the curve");
    }
}

std::vector<double> ReferenceField::dirichlet_data(const Curve& curve) const
{
    const auto& y = curve.nodes();
    std::vector<double> g;
    if (is_stokes()) {
        for (const auto& x : y) {
            const cplx u = velocity(x);
            g.push_back(u.real());
            g.push_back(u.imag());
        }
    } else {
        for (const auto& x : y)
            g.push_back(u(x));
    }
    return g;
}

std::vector<double> ReferenceField::neumann_data(const Curve& curve) const
{
    const auto& y = curve.nodes();
    const auto& n = curve.normals();
    std::vector<double> g;
    for (int j = 0; j < curve.size(); ++j) {
        if (is_stokes()) {
            const cplx t = traction(y[j], n[j]);
            g.push_back(t.real());
            g.push_back(t.imag());
        } else {
            g.push_back(normal_derivative(y[j], n[j]));
        }
    }
    return g;
}

} // namespace closelp
