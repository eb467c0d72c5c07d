#pragma once

#include "closelp/types.hpp"

#include <span>
#include <vector>

namespace closelp {

// Samples are taken at s_j = 2*pi*j/N, j = 0..N-1. N must be even.

std::vector<cplx> spectral_derivative(std::span<const cplx> samples, int order = 1);
std::vector<double> spectral_derivative(std::span<const double> samples, int order = 1);

// Fine grid size for an upsampling factor: ceil(beta*N), bumped to even.
int upsampled_size(int n, double factor);

// Trigonometric interpolation onto a uniform grid of m points (m even).
// Works in both directions; downsampling keeps modes |k| <= m/2.
std::vector<cplx> resample_to(std::span<const cplx> samples, int m);
std::vector<double> resample_to(std::span<const double> samples, int m);

// Upsample by factor > 1 onto upsampled_size(N, factor) points.
std::vector<cplx> resample(std::span<const cplx> samples, double factor);
std::vector<double> resample(std::span<const double> samples, double factor);

// Band-limited interpolant f(s) = sum_{|k|<=N/2} c_k e^{iks}, with the
// Nyquist coefficient split evenly between k = +-N/2.
class TrigInterpolant {
public:
    TrigInterpolant() = default;
    explicit TrigInterpolant(std::span<const cplx> samples);

    int size() const { return n_; }
    cplx operator()(double s, int order = 0) const;
    // Returns f, f', f'' at s in one pass.
    void eval3(double s, cplx& f, cplx& df, cplx& ddf) const;

private:
    int n_ = 0;
    std::vector<cplx> coef_; // c_k for k = -N/2 .. N/2
};

} // namespace closelp
