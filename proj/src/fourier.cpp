#include "closelp/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>

namespace closelp {

namespace {

void require_even(std::size_t n, const char* what)
{
    if (n < 2 || n % 2 != 0)
        throw InvalidArgument(std::string(what) + ": sample count must be even and >= 2");
}

// Signed wavenumber of FFT bin m; the Nyquist bin maps to 0.
inline int wavenumber(int m, int n)
{
    if (2 * m < n)
        return m;
    if (2 * m == n)
        return 0;
    return m - n;
}

std::vector<cplx> fft_fwd(std::span<const cplx> x)
{
    Eigen::FFT<double> fft;
    std::vector<cplx> in(x.begin(), x.end()), out;
    fft.fwd(out, in);
    return out;
}

std::vector<cplx> fft_inv(const std::vector<cplx>& x)
{
    Eigen::FFT<double> fft;
    std::vector<cplx> out;
    fft.inv(out, x);
    return out;
}

std::vector<cplx> to_complex(std::span<const double> x)
{
    return {x.begin(), x.end()};
}

std::vector<double> real_part(const std::vector<cplx>& z)
{
    std::vector<double> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        r[i] = z[i].real();
    return r;
}

} // namespace

std::vector<cplx> spectral_derivative(std::span<const cplx> samples, int order)
{
    require_even(samples.size(), "spectral_derivative");
    if (order < 0)
        throw InvalidArgument("spectral_derivative: negative order");
    const int n = static_cast<int>(samples.size());
    auto c = fft_fwd(samples);
    // Coefficients below eps * max carry no information; dropping them keeps
    // the k^order amplification from turning roundoff into visible noise.
    double cmax = 0.0;
    for (const cplx& v : c)
        cmax = std::max(cmax, std::abs(v));
    const double floor = order > 0 ? std::numeric_limits<double>::epsilon() * cmax : 0.0;
    for (int m = 0; m < n; ++m) {
        if (std::abs(c[m]) < floor)
            c[m] = 0.0;
        const cplx ik(0.0, wavenumber(m, n));
        cplx f = 1.0;
        for (int p = 0; p < order; ++p)
            f *= ik;
        c[m] *= f;
    }
    return fft_inv(c);
}

std::vector<double> spectral_derivative(std::span<const double> samples, int order)
{
    return real_part(spectral_derivative(std::span<const cplx>(to_complex(samples)), order));
}

int upsampled_size(int n, double factor)
{
    int m = static_cast<int>(std::ceil(factor * n - 1e-9));
    if (m % 2)
        ++m;
    return m;
}

std::vector<cplx> resample_to(std::span<const cplx> samples, int m)
{
    require_even(samples.size(), "resample");
    if (m < 2 || m % 2)
        throw InvalidArgument("resample: target size must be even and >= 2");
    const int n = static_cast<int>(samples.size());
    if (m == n)
        return {samples.begin(), samples.end()};
    const auto c = fft_fwd(samples);
    std::vector<cplx> d(m, 0.0);
    if (m > n) {
        for (int k = 0; k < n / 2; ++k)
            d[k] = c[k];
        for (int k = 1; k < n / 2; ++k)
            d[m - k] = c[n - k];
        d[n / 2] = 0.5 * c[n / 2];
        d[m - n / 2] = 0.5 * c[n / 2];
    } else {
        for (int k = 0; k < m / 2; ++k)
            d[k] = c[k];
        for (int k = 1; k < m / 2; ++k)
            d[m - k] = c[n - k];
        d[m / 2] = c[m / 2] + c[n - m / 2];
    }
    auto out = fft_inv(d);
    const double scale = static_cast<double>(m) / n;
    for (auto& v : out)
        v *= scale;
    return out;
}

std::vector<double> resample_to(std::span<const double> samples, int m)
{
    return real_part(resample_to(std::span<const cplx>(to_complex(samples)), m));
}

std::vector<cplx> resample(std::span<const cplx> samples, double factor)
{
    if (!(factor > 1.0))
        throw InvalidArgument("resample: factor must exceed 1");
    return resample_to(samples, upsampled_size(static_cast<int>(samples.size()), factor));
}

std::vector<double> resample(std::span<const double> samples, double factor)
{
    if (!(factor > 1.0))
        throw InvalidArgument("resample: factor must exceed 1");
    return resample_to(samples, upsampled_size(static_cast<int>(samples.size()), factor));
}

TrigInterpolant::TrigInterpolant(std::span<const cplx> samples)
{
    require_even(samples.size(), "TrigInterpolant");
    n_ = static_cast<int>(samples.size());
    const auto c = fft_fwd(samples);
    coef_.assign(n_ + 1, 0.0);
    const int h = n_ / 2;
    for (int k = -h + 1; k < h; ++k)
        coef_[k + h] = c[(k + n_) % n_] / static_cast<double>(n_);
    coef_[0] = coef_[n_] = 0.5 * c[h] / static_cast<double>(n_);
}

cplx TrigInterpolant::operator()(double s, int order) const
{
    const int h = n_ / 2;
    const cplx step = std::polar(1.0, s);
    cplx e = std::polar(1.0, -h * s);
    cplx sum = 0.0;
    for (int k = -h; k <= h; ++k) {
        cplx f = coef_[k + h];
        for (int p = 0; p < order; ++p)
            f *= cplx(0.0, k);
        sum += f * e;
        e *= step;
    }
    return sum;
}

void TrigInterpolant::eval3(double s, cplx& f, cplx& df, cplx& ddf) const
{
    const int h = n_ / 2;
    const cplx step = std::polar(1.0, s);
    cplx e = std::polar(1.0, -h * s);
    f = df = ddf = 0.0;
    for (int k = -h; k <= h; ++k) {
        const cplx t = coef_[k + h] * e;
        f += t;
        df += cplx(0.0, k) * t;
        ddf -= static_cast<double>(k) * k * t;
        e *= step;
    }
}

} // namespace closelp
