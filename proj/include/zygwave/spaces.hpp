#pragma once

// Norms and seminorms: Sobolev, logarithmic Sobolev, Zygmund, log-Lipschitz,
// Hoelder — each with a direct spectral or sampled-shift definition, plus the
// dyadic characterizations used for cross-equivalence measurements.
//
// Shift-based seminorms take the sup over grid-aligned shifts of magnitude
// in (0,1) only; values are exact for the sampled sup and their refinement
// trend (not the continuum sup) is what downstream checks gate on.

#include <vector>

#include "zygwave/grid.hpp"
#include "zygwave/lp.hpp"

namespace zyg {

struct NormSpec {
    double s = 0.0;      // Sobolev index
    double alpha = 0.0;  // logarithmic index
    double gamma = 1.0;  // spectral shift parameter, >= 1
    enum class Mode { direct, dyadic } mode = Mode::direct;
};

// (sum_k (1+|k|^2)^s |uhat_k|^2)^(1/2).
double sobolev_norm(const ScalarField& u, double s);

// Dyadic form: l2 over j of 2^(js) |Delta_j u|_L2 (classical blocks).
double sobolev_norm_dyadic(const ScalarField& u, double s);

// Direct mode: (sum_k Lambda(k,gamma)^(2s) log^(2a)(1+gamma+|k|) |uhat_k|^2)^(1/2).
// Dyadic mode: l2 over j of 2^(js) (1+j)^a |Delta_j^gamma u|_L2.
double log_sobolev_norm(const ScalarField& u, const NormSpec& spec);

// sup over grid shifts zeta in (0,1) of sup_z |f(z+zeta)+f(z-zeta)-2f(z)|/zeta.
// periodic=false restricts z so that z +- zeta stays inside the window.
// pre: at least 4 samples.
double zygmund_seminorm(const std::vector<double>& f, double spacing, bool periodic);
double zygmund_seminorm(const ScalarField& f);  // real part, periodic

// sup_j 2^j |Delta_j f|_Linf, classical blocks.
double dyadic_zygmund_seminorm(const ScalarField& f);

struct LogLipReport {
    double C = 0.0;           // smallest C with |f(x+y)-f(x)| <= C |y| log(1+gamma+1/|y|)
    double worst_shift = 0.0; // shift attaining it
};

LogLipReport loglip_check(const std::vector<double>& f, double spacing, bool periodic,
                          double gamma);
LogLipReport loglip_check(const ScalarField& f, double gamma);

// sup over grid shifts y in (0,1) of sup_x |f(x+y)-f(x)|/|y|^theta.
// errors: theta outside (0,1).
double holder_seminorm(const std::vector<double>& f, double spacing, bool periodic,
                       double theta);
double holder_seminorm(const ScalarField& f, double theta);

}  // namespace zyg
