#pragma once

// Small dense least-squares helpers used by the diagnostic fits
// (Bernstein slope, operator order, mollification scaling laws).

#include <array>
#include <cstddef>
#include <vector>

#include "zygwave/common.hpp"

namespace zyg {

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_resid = 0.0;
};

// Least-squares line y ~= slope*x + intercept; requires >= 2 distinct x.
LinFit linfit(const std::vector<double>& x, const std::vector<double>& y);

// Solve the 3x3 normal equations for y ~= c0*f0 + c1*f1 + c2*f2.
// Returns the coefficient vector; rms_out (if non-null) gets the RMS residual.
std::array<double, 3> lsq3(const std::vector<std::array<double, 3>>& rows,
                           const std::vector<double>& y, double* rms_out);

}  // namespace zyg
