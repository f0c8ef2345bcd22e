#pragma once

// The microlocal energy for second-order wave operators with rough
// coefficients, built from quarter powers of the time-mollified symbol
//     alpha(t,x,xi) = a_eps(t,x) xi^2 + gamma^2:
//
//     v = T_{alpha^{-1/4}} du/dt - T_{d/dt(alpha^{-1/4})} u,
//     w = T_{alpha^{1/4}} u,
//     E(t) = |v|^2 + |w|^2.
//
// E is equivalent to |u|^2_{H^{1/2}_gamma} + |du/dt|^2_{H^{-1/2}_gamma}
// uniformly in the roughness, and its time derivative closes without loss:
// the product-rule terms involving d/dt(alpha^{-1/4}) cancel exactly, so
//     dE/dt = 2 Re<v, T_{alpha^{-1/4}} u_tt - T_{d2/dt2(alpha^{-1/4})} u>
//           + 2 Re<w, T_{d/dt(alpha^{1/4})} u> + 2 Re<w, T_{alpha^{1/4}} u_t>.
//
// A sigma shift replaces each operator T_p by T_{Lambda^sigma p}, giving the
// higher-order energies; sigma = 0 reproduces the base apparatus exactly.
//
// q_operator is the second-microlocal cancellation the energy rests on:
//     Q = (T_{alpha^{1/4}})^* T_{alpha^{1/4}}
//       - (T_{alpha^{-1/4}})^* T_{alpha^{-1/4}} Re T_alpha
// has order ~1/4 although both terms have order 1; deleting the adjoint
// factor from the first term breaks the cancellation back to order ~1.

#include <cstdint>
#include <vector>

#include "zygwave/paraop.hpp"

namespace zyg {

struct TaramaApparatus {
    double gamma = 1.0;
    double sigma = 0.0;
    Symbol alpha;      // band-mollified, order 2 (unsmoothed)
    ParaOp T_qtr;      // T_{Lambda^sigma alpha^{1/4}}
    ParaOp T_mqtr;     // T_{Lambda^sigma alpha^{-1/4}}
    ParaOp T_dt_qtr;   // T_{Lambda^sigma d/dt alpha^{1/4}}
    ParaOp T_dt_mqtr;  // T_{Lambda^sigma d/dt alpha^{-1/4}}
    ParaOp T_dtt_mqtr; // T_{Lambda^sigma d2/dt2 alpha^{-1/4}}
};

// Quarter powers are taken first, then smoothed, then shifted by
// Lambda^sigma; time derivatives are of the smoothed symbols (smoothing
// commutes with d/dt). errors: sigma <= -1/2.
TaramaApparatus build_tarama(const CoefficientField& a, double gamma,
                             const MollifierKernel& ker, const AdmissibleCutoff& psi,
                             double sigma = 0.0);

struct EnergyState {
    ScalarField v;
    ScalarField w;
    double E = 0.0;
};

EnergyState tarama_state(const TaramaApparatus& app, const ScalarField& u,
                         const ScalarField& ut, double t);

// dE/dt by the closed product rule (see above).
double energy_rate(const TaramaApparatus& app, const ScalarField& u,
                   const ScalarField& ut, const ScalarField& utt, double t);

// E^{1/2} / (|u|_{H^{1/2+sigma}_gamma} + |ut|_{H^{-1/2+sigma}_gamma});
// callers gate max(r, 1/r). errors: zero data.
double energy_equivalence(const TaramaApparatus& app, const ScalarField& u,
                          const ScalarField& ut, double t);

// The cancelling combination (order ~ 1/4) and its broken companion
// (order ~ 1). alpha is the unsmoothed order-2 symbol.
LinearOp q_operator(const Symbol& alpha, const AdmissibleCutoff& psi);
LinearOp q_operator_miscancelled(const Symbol& alpha, const AdmissibleCutoff& psi);

struct GronwallFit {
    double lambda = 0.0;  // smallest grid rate with C(lambda) <= 1 + 1e-9
    double C = 0.0;
    bool bounded = false;
};

// Fit E(t)^{1/2} <= e^{lambda (t-t0)} (E(t0)^{1/2}
//                   + int_{t0}^t e^{-lambda (tau-t0)} f(tau) dtau)
// over the rate grid {0, 0.25, ..., 32}; f is the forcing norm trace.
GronwallFit gronwall_fit(const std::vector<double>& t, const std::vector<double>& E,
                         const std::vector<double>& f);

}  // namespace zyg
