#pragma once

// Coefficient fields of prescribed regularity and their time mollification.
//
// Rough coefficients are realized as finite cosine sums
//     a(t,x) = offset + sum_c amp_c cos(p_c t + q_c . x + phase_c),
// which makes three things exact: pointwise evaluation at arbitrary (t,x)
// (the time integrator samples off-grid stage times), time derivatives, and
// the closed-form action of an even mollifier (each component is scaled by
// the kernel's cosine transform at eps*p_c). The sampled-field mollification
// below (quadrature + even reflection) is the reference route; the closed
// form is used where per-stage speed matters, and the two are cross-checked
// in the test suite.
//
// Weierstrass-type sums sum_j 2^{-j} cos(2^j . + phase_j) give functions that
// are Zygmund-continuous but not Lipschitz: the canonical rough class here.

#include <array>
#include <cstdint>
#include <vector>

#include "zygwave/grid.hpp"
#include "zygwave/rng.hpp"

namespace zyg {

enum class RegClass { lipschitz, zygmund, loglipschitz, hoelder };

enum class RoughAxis { t, x, tx };

struct TimeGrid {
    double t0 = 0.0;
    double T = 1.0;
    int nt = 0;  // samples, both endpoints included; >= 2

    double dt() const { return (T - t0) / (nt - 1); }
    double time(int i) const { return t0 + i * dt(); }
};

TimeGrid make_time_grid(double t0, double T, int nt);

struct CosineComponent {
    double amp = 0.0;
    double pt = 0.0;     // time frequency
    double qx = 0.0;     // first-axis space frequency
    double qy = 0.0;     // second-axis space frequency (dim 2)
    double phase = 0.0;
};

struct MollifierKernel;

struct CoefficientGenerator {
    double offset = 0.0;
    std::vector<CosineComponent> comps;

    double eval(double t, const std::array<double, 2>& x) const;
    double eval_dt(double t, const std::array<double, 2>& x) const;
    double eval_dtt(double t, const std::array<double, 2>& x) const;

    // Closed-form time mollification at width eps: amp -> amp * chat(eps*pt).
    CoefficientGenerator mollified(double eps, const MollifierKernel& ker) const;
};

// Even bump rho(s) = exp(-1/(1-s^2)) on (-1,1), quadrature-normalized to unit
// mass, with differentiated-kernel weight tables for d/dt and d2/dt2.
struct MollifierKernel {
    std::vector<double> nodes;    // Simpson nodes on [-1,1]
    std::vector<double> w_rho;    // weight * rho, sums to 1
    std::vector<double> w_drho;   // weight * rho'
    std::vector<double> w_ddrho;  // weight * rho''

    // Cosine transform chat(s) = integral rho(sigma) cos(s sigma) dsigma.
    double chat(double s) const;
    // integral rho(sigma) |sigma| dsigma.
    double moment_abs() const;
};

MollifierKernel make_mollifier(int nodes = 513);  // nodes odd, >= 5

struct CoefficientField {
    TimeGrid tg;
    PeriodicGrid grid;
    std::vector<double> values;      // time-major: values[it*grid.size()+m]
    std::vector<double> dt_values;   // filled by mollify_time, else empty
    std::vector<double> dtt_values;  // filled by mollify_time, else empty
    RegClass cls = RegClass::zygmund;
    double lam0 = 0.0;  // lower ellipticity bound
    double Lam0 = 0.0;  // upper bound
    bool has_generator = false;
    CoefficientGenerator gen;

    double at(int it, std::size_t m) const {
        return values[static_cast<std::size_t>(it) * grid.size() + m];
    }
    std::vector<double> time_slice(int it) const;   // one x-row
    std::vector<double> space_column(std::size_t m) const;  // one t-column
};

// Sample a generator onto (tg, grid), keeping the generator attached.
CoefficientField sample_generator(const CoefficientGenerator& gen, const TimeGrid& tg,
                                  const PeriodicGrid& grid, RegClass cls, double lam0,
                                  double Lam0);

CoefficientField constant_coefficient(double c, const TimeGrid& tg,
                                      const PeriodicGrid& grid);

// a = lam0 + (Lam0-lam0)/2 * (1 + W/S), W = sum_{j=1..J} 2^{-j} cos(...),
// S = sum 2^{-j}; frequencies 2^j on the selected axes (axis tx draws a
// random direction with |(p,q)| = 2^j). pre: J >= 1; roughness must be
// resolved by the relevant grid (space: 2^J < n/2; time: 2^J < pi/dt).
CoefficientField weierstrass_zygmund(int J, std::uint64_t seed, RoughAxis axis,
                                     double lam0, double Lam0, const TimeGrid& tg,
                                     const PeriodicGrid& grid);

// Zygmund in t, smooth in x: time frequencies 2^j, space frequencies drawn
// from {-2..2}. Same resolution rule for the time axis.
CoefficientField smooth_x_zygmund_t(int J, std::uint64_t seed, double lam0,
                                    double Lam0, const TimeGrid& tg,
                                    const PeriodicGrid& grid);

// Hoelder-theta analogue (amplitudes 2^{-j*theta}): strictly rougher than
// Zygmund, used as the control that the mollification gates discriminate.
CoefficientField holder_field(double theta, int J, std::uint64_t seed, RoughAxis axis,
                              double lam0, double Lam0, const TimeGrid& tg,
                              const PeriodicGrid& grid);

struct LowerOrderCoefficients {
    bool present = false;
    std::vector<CoefficientField> b_x;  // one per space axis, Hoelder-theta in x
    CoefficientField b_t;               // coefficient of d/dt
    CoefficientField c;                 // zeroth order, bounded
    double theta = 0.6;
};

// a_eps(t,x) = integral rho_eps(t-s) a(s,x) ds by quadrature, a extended past
// [t0,T] by even reflection; dt_values/dtt_values are filled using the
// differentiated kernel. pre: eps in (0,1] and eps >= 8*dt.
CoefficientField mollify_time(const CoefficientField& a, double eps,
                              const MollifierKernel& ker);

// x-profile at arbitrary time (generator route exact, sampled route by
// linear interpolation with t clamped to the window). deriv in {0,1,2};
// errors: derivative requested on a sampled field without derivative tables.
std::vector<double> coefficient_profile(const CoefficientField& a, double t,
                                        int deriv);

struct MollificationRow {
    double eps = 0.0;
    double sup_diff = 0.0;  // sup |a_eps - a|
    double sup_dt = 0.0;    // sup |d/dt a_eps|
    double sup_dtt = 0.0;   // sup |d2/dt2 a_eps|
    double min_val = 0.0, max_val = 0.0;
};

struct MollificationReport {
    std::vector<MollificationRow> rows;
    bool degenerate_zero = false;  // all differences at rounding level
    double slope_diff = 0.0;       // d log sup|a_eps-a| / d log eps (~1 Zygmund)
    double slope_dtt = 0.0;        // ditto for sup|dtt a_eps| (~ -1)
    double dt_affine_slope = 0.0;  // sup|dt a_eps| ~ alpha + beta log(1/eps)
    double dt_affine_resid_rel = 0.0;
    double dt_power_exponent_raw = 0.0;   // slope of log sup|dt| vs log(1/eps)
    double dt_power_resid_rel = 0.0;
    double dt_power_exponent_normalized = 0.0;  // after dividing by log(2+1/eps)
    double min_val = 0.0, max_val = 0.0;        // over the whole ladder
};

// Evaluate the mollification scaling laws over a ladder of widths.
// errors: empty ladder, widths outside (0,1], under-resolved widths.
MollificationReport mollification_report(const CoefficientField& a,
                                         const std::vector<double>& ladder,
                                         const MollifierKernel& ker);

// Measured regularity functionals of a coefficient field.
double zygmund_seminorm_t(const CoefficientField& a);  // max over x columns
double zygmund_seminorm_x(const CoefficientField& a);  // max over t rows
double lipschitz_constant_t(const CoefficientField& a);
double lipschitz_constant_x(const CoefficientField& a);
// Isotropic space-time second-difference seminorm over a geometrically
// subsampled shift set (logged, not gated).
double spacetime_zygmund_seminorm(const CoefficientField& a);

}  // namespace zyg
