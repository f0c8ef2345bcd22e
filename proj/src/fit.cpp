#include "zygwave/fit.hpp"

#include <cmath>

namespace zyg {

LinFit linfit(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "linfit: size mismatch");
    require(x.size() >= 2, "linfit: need at least two points");
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    require(sxx > 0.0, "linfit: degenerate abscissae");
    LinFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms_resid = std::sqrt(ss / double(n));
    return f;
}

std::array<double, 3> lsq3(const std::vector<std::array<double, 3>>& rows,
                           const std::vector<double>& y, double* rms_out) {
    require(rows.size() == y.size(), "lsq3: size mismatch");
    require(rows.size() >= 3, "lsq3: need at least three points");
    double a[3][4] = {};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) a[r][c] += rows[i][r] * rows[i][c];
            a[r][3] += rows[i][r] * y[i];
        }
    }
    // Gaussian elimination with partial pivoting on the 3x4 augmented system.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        for (int c = 0; c < 4; ++c) std::swap(a[col][c], a[piv][c]);
        require(std::abs(a[col][col]) > 1e-300, "lsq3: singular normal equations");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::array<double, 3> coef{a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
    if (rms_out) {
        double ss = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double pred =
                coef[0] * rows[i][0] + coef[1] * rows[i][1] + coef[2] * rows[i][2];
            ss += (y[i] - pred) * (y[i] - pred);
        }
        *rms_out = std::sqrt(ss / double(rows.size()));
    }
    return coef;
}

}  // namespace zyg
