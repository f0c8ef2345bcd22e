#include "zygwave/lp.hpp"

#include <cmath>

#include "zygwave/fit.hpp"

namespace zyg {

double LpMode::radius(const std::array<int, 2>& k, int dim) const {
    const double kabs = dim == 1 ? std::abs(static_cast<double>(k[0]))
                                 : std::hypot(static_cast<double>(k[0]),
                                              static_cast<double>(k[1]));
    return use_gamma ? lambda_weight_abs(kabs, gamma) : kabs;
}

double lp_lowpass_weight(const LpMode& mode, int j, double r) {
    require(j >= 0, "lp_lowpass_weight: j must be >= 0");
    return mode.cutoff.chi(std::ldexp(r, -j));
}

double lp_block_weight(const LpMode& mode, int j, double r) {
    require(j >= 0, "lp_block_weight: j must be >= 0");
    if (j == 0) return mode.cutoff.chi(r);
    return mode.cutoff.chi(std::ldexp(r, -j)) - mode.cutoff.chi(std::ldexp(r, -(j - 1)));
}

ScalarField lp_lowpass(const LpMode& mode, int j, const ScalarField& u) {
    const int dim = u.grid().dim;
    return u.multiplier([&](const std::array<int, 2>& k) {
        return lp_lowpass_weight(mode, j, mode.radius(k, dim));
    });
}

ScalarField lp_block(const LpMode& mode, int j, const ScalarField& u) {
    const int dim = u.grid().dim;
    return u.multiplier([&](const std::array<int, 2>& k) {
        return lp_block_weight(mode, j, mode.radius(k, dim));
    });
}

int lp_bands_max(const LpMode& mode, const PeriodicGrid& g) {
    double rmax = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        if (g.is_nyquist(m)) continue;  // Nyquist is zeroed by every operator
        rmax = std::max(rmax, mode.radius(g.freq(m), g.dim));
    }
    int j = 0;
    while (std::ldexp(rmax, -j) > 1.0) ++j;
    return j;
}

BernsteinReport bernstein_check(const PeriodicGrid& g, int jlo, int jhi,
                                int trials, std::uint64_t seed) {
    require(trials >= 1, "bernstein_check: empty trial set");
    require(jlo >= 1 && jhi >= jlo, "bernstein_check: need 1 <= jlo <= jhi");
    require((2 << jhi) < g.n / 2, "bernstein_check: band exceeds Nyquist");

    LpMode mode;  // classical radius
    Rng rng(seed);
    BernsteinReport rep;
    std::vector<double> xs, ys;
    rep.twosided_C = 1.0;
    for (int j = jlo; j <= jhi; ++j) {
        double acc = 0.0;
        for (int t = 0; t < trials; ++t) {
            const ScalarField w = random_white_field(g, rng);
            const ScalarField u = lp_block(mode, j, w);
            const double nu = u.l2();
            require(nu > 0.0, "bernstein_check: block annihilated the sample");
            const double ratio = u.grad_l2() / nu;
            acc += ratio;
            xs.push_back(j * std::log(2.0));
            ys.push_back(std::log(ratio));
            const double scaled = std::ldexp(ratio, -j);
            rep.twosided_C = std::max(rep.twosided_C, std::max(scaled, 1.0 / scaled));
        }
        rep.mean_ratio.push_back(acc / trials);
    }
    if (jhi > jlo) rep.slope = linfit(xs, ys).slope;
    return rep;
}

}  // namespace zyg
