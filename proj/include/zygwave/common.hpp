#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zyg {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Thrown when a caller violates a documented precondition.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

}  // namespace zyg
