#pragma once

// Spectral method-of-lines solver for the second-order Cauchy problem
//
//     d2u/dt2 - sum_j d_j(a d_j u) + sum_j b_j d_j u + b0 du/dt + c u = f,
//     u(t0) = u0,  du/dt(t0) = u1,
//
// on the periodic grid: space derivatives are exact Fourier multipliers,
// coefficient products are pointwise in samples, time stepping is classical
// RK4 on (u, p = du/dt) under the CFL bound dt <= cfl * dx / sqrt(Lam0).
// Rough coefficients are evaluated directly at the stage times (the
// generator form makes off-grid times exact). After every step the state is
// projected onto the 2/3-rule band, which removes the aliased tail of the
// products and the Nyquist mode.
//
// The diagnostics relate the discrete operator to the paradifferential one:
// remainder_R measures   sum d(a du) - gamma^2 u + Re T_{alpha~} u   (the
// divergence form against the unmollified symbol; zero when a is constant),
// and remainder_B measures   b v - T_b v   (multiplication against the
// paraproduct; the order drops by the Hoelder exponent of b).

#include <cstdint>
#include <functional>
#include <vector>

#include "zygwave/energy.hpp"

namespace zyg {

struct CauchyProblem {
    PeriodicGrid grid;
    double t0 = 0.0;
    double T = 1.0;
    CoefficientField a;             // principal coefficient, elliptic
    LowerOrderCoefficients lower;   // optional b_x, b_t, c
    ScalarField u0;                 // initial value
    ScalarField u1;                 // initial velocity
    std::function<ScalarField(double)> forcing;  // empty = zero
    double cfl = 0.25;
    double dt_override = 0.0;       // > 0 forces the step size
};

struct Trajectory {
    std::vector<double> times;      // trace instants (stride-subsampled)
    std::vector<ScalarField> u;
    std::vector<ScalarField> p;     // du/dt at the trace instants
    double dt = 0.0;                // step actually used
    int steps = 0;
    int stride = 1;
};

// Full spatial + lower-order part L(u, p, t) (everything except d2u/dt2
// and the forcing), so the ODE system reads dp/dt = f - L.
ScalarField apply_spatial(const CauchyProblem& pb, const ScalarField& u,
                          const ScalarField& p, double t);

// d2u/dt2 + L - f at given (u, p, utt): the residual functional used to
// check a manufactured solution.
ScalarField operator_residual(const CauchyProblem& pb, const ScalarField& u,
                              const ScalarField& p, const ScalarField& utt,
                              double t);

// RK4 integration; at most ~512 trace instants are retained (first and last
// always included). errors: invalid window, CFL-violating override, grid
// mismatches; nonfinite state aborts with a runtime error naming the step.
Trajectory solve(const CauchyProblem& pb);

struct EnergyTraceRow {
    double t = 0.0;
    double E = 0.0;             // microlocal energy
    double hhalf_u = 0.0;       // |u|_{H^{1/2+sigma}_gamma}
    double hneghalf_dtu = 0.0;  // |du/dt|_{H^{-1/2+sigma}_gamma}
    double hneghalf_f = 0.0;    // |f|_{H^{-1/2+sigma}_gamma}
};

// Evaluate the energy apparatus along a trajectory.
std::vector<EnergyTraceRow> energy_trace(const Trajectory& traj,
                                         const TaramaApparatus& app,
                                         const std::function<ScalarField(double)>& f);

// Divergence form vs unmollified symbol: u -> sum d(a du) - gamma^2 u
// + Re T_{alpha~} u. Expected order ~1 for Zygmund a (naive order 2);
// identically zero for constant a.
LinearOp divergence_symbol_remainder(const CoefficientField& a, double gamma,
                                     const AdmissibleCutoff& psi);

// Multiplication vs paraproduct: v -> b v - T_b v. For b Hoelder-theta the
// measured order drops to ~ -theta (multiplication itself has order 0).
LinearOp paraproduct_remainder(const CoefficientField& b, double gamma,
                               const AdmissibleCutoff& psi);

}  // namespace zyg
