#include "zygwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zygwave/spaces.hpp"

namespace zyg {

namespace {

ScalarField coeff_times(const CoefficientField& c, double t, const ScalarField& v) {
    return pointwise_product(coefficient_profile(c, t, 0), v);
}

}  // namespace

ScalarField apply_spatial(const CauchyProblem& pb, const ScalarField& u,
                          const ScalarField& p, double t) {
    const PeriodicGrid& g = pb.grid;
    ScalarField out = ScalarField::zero(g);
    for (int axis = 0; axis < g.dim; ++axis) {
        const ScalarField du = u.derivative(axis);
        out = out - coeff_times(pb.a, t, du).derivative(axis);
    }
    if (pb.lower.present) {
        for (int axis = 0; axis < g.dim && axis < static_cast<int>(pb.lower.b_x.size());
             ++axis)
            out = out + coeff_times(pb.lower.b_x[axis], t, u.derivative(axis));
        if (!pb.lower.b_t.values.empty() || pb.lower.b_t.has_generator)
            out = out + coeff_times(pb.lower.b_t, t, p);
        if (!pb.lower.c.values.empty() || pb.lower.c.has_generator)
            out = out + coeff_times(pb.lower.c, t, u);
    }
    return out;
}

ScalarField operator_residual(const CauchyProblem& pb, const ScalarField& u,
                              const ScalarField& p, const ScalarField& utt,
                              double t) {
    ScalarField r = utt + apply_spatial(pb, u, p, t);
    if (pb.forcing) r = r - pb.forcing(t);
    return r;
}

Trajectory solve(const CauchyProblem& pb) {
    const PeriodicGrid& g = pb.grid;
    require(pb.T > pb.t0, "solve: empty time window");
    require(pb.a.grid == g, "solve: coefficient grid mismatch");
    require(pb.u0.grid() == g && pb.u1.grid() == g, "solve: data grid mismatch");
    require(pb.a.Lam0 > 0.0, "solve: missing upper ellipticity bound");
    require(pb.a.tg.t0 <= pb.t0 && pb.T <= pb.a.tg.T,
            "solve: coefficient window does not cover the problem window");
    const double dt_cfl = pb.cfl * g.dx() / std::sqrt(pb.a.Lam0);
    double dt = dt_cfl;
    if (pb.dt_override > 0.0) {
        require(pb.dt_override <= dt_cfl * (1.0 + 1e-12),
                "solve: dt override violates the CFL bound");
        dt = pb.dt_override;
    }
    const int steps = std::max(1, static_cast<int>(std::ceil((pb.T - pb.t0) / dt)));
    dt = (pb.T - pb.t0) / steps;
    const int stride = std::max(1, (steps + 511) / 512);
    const int cut = dealias_cut(g);

    Trajectory traj;
    traj.dt = dt;
    traj.steps = steps;
    traj.stride = stride;

    ScalarField u = pb.u0.truncated(cut);
    ScalarField p = pb.u1.truncated(cut);
    auto rhs_p = [&](const ScalarField& uu, const ScalarField& pp, double t) {
        ScalarField r = apply_spatial(pb, uu, pp, t).scaled(-1.0);
        if (pb.forcing) r = r + pb.forcing(t);
        return r;
    };
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.u.push_back(u);
        traj.p.push_back(p);
    };
    record(pb.t0);
    for (int s = 0; s < steps; ++s) {
        const double t = pb.t0 + s * dt;
        const ScalarField k1u = p;
        const ScalarField k1p = rhs_p(u, p, t);
        const ScalarField u2 = u + k1u.scaled(0.5 * dt);
        const ScalarField p2 = p + k1p.scaled(0.5 * dt);
        const ScalarField k2u = p2;
        const ScalarField k2p = rhs_p(u2, p2, t + 0.5 * dt);
        const ScalarField u3 = u + k2u.scaled(0.5 * dt);
        const ScalarField p3 = p + k2p.scaled(0.5 * dt);
        const ScalarField k3u = p3;
        const ScalarField k3p = rhs_p(u3, p3, t + 0.5 * dt);
        const ScalarField u4 = u + k3u.scaled(dt);
        const ScalarField p4 = p + k3p.scaled(dt);
        const ScalarField k4u = p4;
        const ScalarField k4p = rhs_p(u4, p4, t + dt);
        u = (u + (k1u + (k2u + k3u).scaled(2.0) + k4u).scaled(dt / 6.0)).truncated(cut);
        p = (p + (k1p + (k2p + k3p).scaled(2.0) + k4p).scaled(dt / 6.0)).truncated(cut);
        const double check = u.l2() + p.l2();
        if (!std::isfinite(check))
            throw std::runtime_error("solve: nonfinite state at step " +
                                     std::to_string(s + 1) + " (t = " +
                                     std::to_string(t + dt) + ")");
        if ((s + 1) % stride == 0 || s + 1 == steps) record(pb.t0 + (s + 1) * dt);
    }
    return traj;
}

std::vector<EnergyTraceRow> energy_trace(const Trajectory& traj,
                                         const TaramaApparatus& app,
                                         const std::function<ScalarField(double)>& f) {
    std::vector<EnergyTraceRow> rows;
    rows.reserve(traj.times.size());
    const NormSpec up{0.5 + app.sigma, 0.0, app.gamma, NormSpec::Mode::direct};
    const NormSpec dn{-0.5 + app.sigma, 0.0, app.gamma, NormSpec::Mode::direct};
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        EnergyTraceRow row;
        row.t = traj.times[i];
        row.E = tarama_state(app, traj.u[i], traj.p[i], row.t).E;
        row.hhalf_u = log_sobolev_norm(traj.u[i], up);
        row.hneghalf_dtu = log_sobolev_norm(traj.p[i], dn);
        row.hneghalf_f = f ? log_sobolev_norm(f(row.t), dn) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

LinearOp divergence_symbol_remainder(const CoefficientField& a, double gamma,
                                     const AdmissibleCutoff& psi) {
    const ParaOp Ta = quantize(ensure_smoothed(build_alpha_tilde(a, gamma), psi));
    const ParaOp Tas = Ta.adjoint();
    const CoefficientField coeff = a;
    const double g2 = gamma * gamma;
    return LinearOp{
        "divergence-vs-symbol",
        [Ta, Tas, coeff, g2](const ScalarField& u, double t) {
            const ScalarField div =
                pointwise_product(coefficient_profile(coeff, t, 0), u.derivative(0))
                    .derivative(0);
            const ScalarField re_a = (Ta.apply(u, t) + Tas.apply(u, t)).scaled(0.5);
            return div - u.scaled(g2) + re_a;
        }};
}

LinearOp paraproduct_remainder(const CoefficientField& b, double gamma,
                               const AdmissibleCutoff& psi) {
    const ParaOp Tb = quantize(ensure_smoothed(coefficient_symbol(b, gamma), psi));
    const CoefficientField coeff = b;
    return LinearOp{"multiplication-vs-paraproduct",
                    [Tb, coeff](const ScalarField& v, double t) {
                        return pointwise_product(coefficient_profile(coeff, t, 0), v) -
                               Tb.apply(v, t);
                    }};
}

}  // namespace zyg
