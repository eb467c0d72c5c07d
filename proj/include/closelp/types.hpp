#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace closelp {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx I{0.0, 1.0};

enum class Side { interior, exterior };

inline std::string_view to_string(Side side)
{
    return side == Side::interior ? "interior" : "exterior";
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// 1/z without the libgcc range-checked division (hot loops only).
inline cplx recip(cplx z)
{
    const double n = z.real() * z.real() + z.imag() * z.imag();
    return {z.real() / n, -z.imag() / n};
}

} // namespace closelp
