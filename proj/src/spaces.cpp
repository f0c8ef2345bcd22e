#include "zygwave/spaces.hpp"

#include <cmath>

namespace zyg {

double sobolev_norm(const ScalarField& u, double s) {
    const PeriodicGrid& g = u.grid();
    double acc = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double k2 = g.freq_abs(m) * g.freq_abs(m);
        acc += std::pow(1.0 + k2, s) * std::norm(u.spectrum()[m]);
    }
    return std::sqrt(acc);
}

double sobolev_norm_dyadic(const ScalarField& u, double s) {
    LpMode mode;  // classical radius
    const int jmax = lp_bands_max(mode, u.grid());
    double acc = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        const double nj = lp_block(mode, j, u).l2();
        acc += std::pow(2.0, 2.0 * s * j) * nj * nj;
    }
    return std::sqrt(acc);
}

double log_sobolev_norm(const ScalarField& u, const NormSpec& spec) {
    require(spec.gamma >= 1.0, "log_sobolev_norm: gamma must be >= 1");
    if (spec.mode == NormSpec::Mode::direct) {
        const PeriodicGrid& g = u.grid();
        double acc = 0.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
            const double kabs = g.freq_abs(m);
            const double lam = lambda_weight_abs(kabs, spec.gamma);
            const double lg = std::log(1.0 + spec.gamma + kabs);
            acc += std::pow(lam, 2.0 * spec.s) * std::pow(lg, 2.0 * spec.alpha) *
                   std::norm(u.spectrum()[m]);
        }
        return std::sqrt(acc);
    }
    LpMode mode;
    mode.use_gamma = true;
    mode.gamma = spec.gamma;
    const int jmax = lp_bands_max(mode, u.grid());
    double acc = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        const double nj = lp_block(mode, j, u).l2();
        acc += std::pow(2.0, 2.0 * spec.s * j) *
               std::pow(1.0 + j, 2.0 * spec.alpha) * nj * nj;
    }
    return std::sqrt(acc);
}

namespace {

// Enumerate shift counts m with 0 < m*spacing < 1.
int max_shift_steps(double spacing, std::size_t nsamp, bool periodic) {
    int mmax = static_cast<int>(std::ceil(1.0 / spacing)) - 1;
    while (mmax >= 1 && mmax * spacing >= 1.0) --mmax;
    const int cap = periodic ? static_cast<int>(nsamp) / 2 : static_cast<int>(nsamp) - 1;
    return std::min(mmax, cap);
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
    std::ptrdiff_t r = i % static_cast<std::ptrdiff_t>(n);
    if (r < 0) r += static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(r);
}

}  // namespace

double zygmund_seminorm(const std::vector<double>& f, double spacing, bool periodic) {
    require(f.size() >= 4, "zygmund_seminorm: need at least 4 samples");
    require(spacing > 0.0, "zygmund_seminorm: spacing must be positive");
    const std::size_t n = f.size();
    const int mmax = max_shift_steps(spacing, n, periodic);
    double best = 0.0;
    for (int m = 1; m <= mmax; ++m) {
        const double zeta = m * spacing;
        double sup = 0.0;
        if (periodic) {
            for (std::size_t z = 0; z < n; ++z) {
                const double d = f[wrap(static_cast<std::ptrdiff_t>(z) + m, n)] +
                                 f[wrap(static_cast<std::ptrdiff_t>(z) - m, n)] - 2.0 * f[z];
                sup = std::max(sup, std::abs(d));
            }
        } else {
            for (std::size_t z = m; z + m < n; ++z) {
                const double d = f[z + m] + f[z - m] - 2.0 * f[z];
                sup = std::max(sup, std::abs(d));
            }
        }
        best = std::max(best, sup / zeta);
    }
    return best;
}

double zygmund_seminorm(const ScalarField& f) {
    require(f.grid().dim == 1, "zygmund_seminorm: shift form is one-dimensional");
    std::vector<double> re(f.samples().size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = f.samples()[i].real();
    return zygmund_seminorm(re, f.grid().dx(), true);
}

double dyadic_zygmund_seminorm(const ScalarField& f) {
    LpMode mode;  // classical radius
    const int jmax = lp_bands_max(mode, f.grid());
    double best = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        best = std::max(best, std::ldexp(lp_block(mode, j, f).linf(), j));
    }
    return best;
}

LogLipReport loglip_check(const std::vector<double>& f, double spacing, bool periodic,
                          double gamma) {
    require(f.size() >= 2, "loglip_check: need at least 2 samples");
    require(gamma >= 1.0, "loglip_check: gamma must be >= 1");
    const std::size_t n = f.size();
    const int mmax = max_shift_steps(spacing, n, periodic);
    LogLipReport rep;
    for (int m = 1; m <= mmax; ++m) {
        const double y = m * spacing;
        double sup = 0.0;
        if (periodic) {
            for (std::size_t z = 0; z < n; ++z)
                sup = std::max(sup, std::abs(f[wrap(static_cast<std::ptrdiff_t>(z) + m, n)] - f[z]));
        } else {
            for (std::size_t z = 0; z + m < n; ++z)
                sup = std::max(sup, std::abs(f[z + m] - f[z]));
        }
        const double c = sup / (y * std::log(1.0 + gamma + 1.0 / y));
        if (c > rep.C) {
            rep.C = c;
            rep.worst_shift = y;
        }
    }
    return rep;
}

LogLipReport loglip_check(const ScalarField& f, double gamma) {
    require(f.grid().dim == 1, "loglip_check: shift form is one-dimensional");
    std::vector<double> re(f.samples().size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = f.samples()[i].real();
    return loglip_check(re, f.grid().dx(), true, gamma);
}

double holder_seminorm(const std::vector<double>& f, double spacing, bool periodic,
                       double theta) {
    require(theta > 0.0 && theta < 1.0, "holder_seminorm: theta must lie in (0,1)");
    require(f.size() >= 2, "holder_seminorm: need at least 2 samples");
    const std::size_t n = f.size();
    const int mmax = max_shift_steps(spacing, n, periodic);
    double best = 0.0;
    for (int m = 1; m <= mmax; ++m) {
        const double y = m * spacing;
        double sup = 0.0;
        if (periodic) {
            for (std::size_t z = 0; z < n; ++z)
                sup = std::max(sup, std::abs(f[wrap(static_cast<std::ptrdiff_t>(z) + m, n)] - f[z]));
        } else {
            for (std::size_t z = 0; z + m < n; ++z)
                sup = std::max(sup, std::abs(f[z + m] - f[z]));
        }
        best = std::max(best, sup / std::pow(y, theta));
    }
    return best;
}

double holder_seminorm(const ScalarField& f, double theta) {
    require(f.grid().dim == 1, "holder_seminorm: shift form is one-dimensional");
    std::vector<double> re(f.samples().size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = f.samples()[i].real();
    return holder_seminorm(re, f.grid().dx(), true, theta);
}

}  // namespace zyg
