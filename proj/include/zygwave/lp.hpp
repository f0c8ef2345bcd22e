#pragma once

// Littlewood-Paley frequency decomposition on the periodic grid.
//
// The radius is either |k| (classical) or Lambda(k,gamma) = sqrt(gamma^2+|k|^2)
// (the gamma-weighted calculus). Lowpass multipliers are S_j = chi(2^-j R);
// blocks are
//     block 0   = S_0 = chi(R),
//     block j   = S_j - S_{j-1}   (j >= 1),
// so that sum_{j=0..J} block_j = S_J telescopes exactly, and S_J = identity on
// the grid once 2^-J R <= 1 at every lattice point. Scaling by powers of two
// is exact in floating point, so reconstruction holds to the last bit.

#include <vector>

#include "zygwave/cutoff.hpp"
#include "zygwave/grid.hpp"

namespace zyg {

struct LpMode {
    bool use_gamma = false;  // radius Lambda(k,gamma) instead of |k|
    double gamma = 1.0;
    RadialCutoff cutoff;

    double radius(const std::array<int, 2>& k, int dim) const;
};

// Multiplier value of lowpass S_j at radius r (j >= 0).
double lp_lowpass_weight(const LpMode& mode, int j, double r);

// Multiplier value of block j at radius r (j >= 0).
double lp_block_weight(const LpMode& mode, int j, double r);

// Apply lowpass / block to a field.
ScalarField lp_lowpass(const LpMode& mode, int j, const ScalarField& u);
ScalarField lp_block(const LpMode& mode, int j, const ScalarField& u);

// Smallest J with S_J == identity on the grid's lattice frequencies.
int lp_bands_max(const LpMode& mode, const PeriodicGrid& g);

struct BernsteinReport {
    double slope = 0.0;       // fitted d(log ratio)/d(j log 2); ~1 for first order
    double twosided_C = 1.0;  // max over samples of max(ratio/2^j, 2^j/ratio)
    std::vector<double> mean_ratio;  // per band, ratio = |grad u|_2 / |u|_2
};

// Measure the Bernstein inequalities on random block-localized fields:
// for u supported in block j, |grad u|_2 ~ 2^j |u|_2 within a uniform constant.
// Classical mode only. pre: 1 <= jlo <= jhi and 2^(jhi+1) < n/2; trials >= 1.
BernsteinReport bernstein_check(const PeriodicGrid& g, int jlo, int jhi,
                                int trials, std::uint64_t seed);

}  // namespace zyg
