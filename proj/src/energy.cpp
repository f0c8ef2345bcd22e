#include "zygwave/energy.hpp"

#include <algorithm>
#include <cmath>

#include "zygwave/spaces.hpp"

namespace zyg {

TaramaApparatus build_tarama(const CoefficientField& a, double gamma,
                             const MollifierKernel& ker, const AdmissibleCutoff& psi,
                             double sigma) {
    require(sigma > -0.5, "build_tarama: sigma must exceed -1/2");
    TaramaApparatus app;
    app.gamma = gamma;
    app.sigma = sigma;
    app.alpha = build_alpha(a, gamma, ker, EpsLinkage::banded);
    const Symbol s_qtr = ensure_smoothed(symbol_power(app.alpha, 0.25), psi);
    const Symbol s_mqtr = ensure_smoothed(symbol_power(app.alpha, -0.25), psi);
    const Symbol lam_sig =
        lambda_power_symbol(app.alpha.grid, app.alpha.tg, gamma, sigma);
    auto shift = [&](const Symbol& s) { return quantize(symbol_product(lam_sig, s)); };
    app.T_qtr = shift(s_qtr);
    app.T_mqtr = shift(s_mqtr);
    app.T_dt_qtr = shift(symbol_time_derivative(s_qtr, 1));
    app.T_dt_mqtr = shift(symbol_time_derivative(s_mqtr, 1));
    app.T_dtt_mqtr = shift(symbol_time_derivative(s_mqtr, 2));
    return app;
}

EnergyState tarama_state(const TaramaApparatus& app, const ScalarField& u,
                         const ScalarField& ut, double t) {
    EnergyState st;
    st.v = app.T_mqtr.apply(ut, t) - app.T_dt_mqtr.apply(u, t);
    st.w = app.T_qtr.apply(u, t);
    const double nv = st.v.l2();
    const double nw = st.w.l2();
    st.E = nv * nv + nw * nw;
    return st;
}

double energy_rate(const TaramaApparatus& app, const ScalarField& u,
                   const ScalarField& ut, const ScalarField& utt, double t) {
    const EnergyState st = tarama_state(app, u, ut, t);
    const ScalarField dv = app.T_mqtr.apply(utt, t) - app.T_dtt_mqtr.apply(u, t);
    const ScalarField dw = app.T_dt_qtr.apply(u, t) + app.T_qtr.apply(ut, t);
    return 2.0 * dv.inner(st.v).real() + 2.0 * dw.inner(st.w).real();
}

double energy_equivalence(const TaramaApparatus& app, const ScalarField& u,
                          const ScalarField& ut, double t) {
    const EnergyState st = tarama_state(app, u, ut, t);
    const NormSpec up{0.5 + app.sigma, 0.0, app.gamma, NormSpec::Mode::direct};
    const NormSpec dn{-0.5 + app.sigma, 0.0, app.gamma, NormSpec::Mode::direct};
    const double den = log_sobolev_norm(u, up) + log_sobolev_norm(ut, dn);
    require(den > 0.0, "energy_equivalence: zero data");
    return std::sqrt(st.E) / den;
}

LinearOp q_operator(const Symbol& alpha, const AdmissibleCutoff& psi) {
    const ParaOp Tq = quantize(ensure_smoothed(symbol_power(alpha, 0.25), psi));
    const ParaOp Tm = quantize(ensure_smoothed(symbol_power(alpha, -0.25), psi));
    const ParaOp Ta = quantize(ensure_smoothed(alpha, psi));
    const ParaOp Tqs = Tq.adjoint();
    const ParaOp Tms = Tm.adjoint();
    const ParaOp Tas = Ta.adjoint();
    return LinearOp{"quarter-power-cancellation",
                    [Tq, Tqs, Tm, Tms, Ta, Tas](const ScalarField& u, double t) {
                        const ScalarField first = Tqs.apply(Tq.apply(u, t), t);
                        const ScalarField re_a =
                            (Ta.apply(u, t) + Tas.apply(u, t)).scaled(0.5);
                        const ScalarField second =
                            Tms.apply(Tm.apply(re_a, t), t);
                        return first - second;
                    }};
}

LinearOp q_operator_miscancelled(const Symbol& alpha, const AdmissibleCutoff& psi) {
    const ParaOp Tq = quantize(ensure_smoothed(symbol_power(alpha, 0.25), psi));
    const ParaOp Th = quantize(ensure_smoothed(symbol_power(alpha, 0.5), psi));
    const ParaOp Ths = Th.adjoint();
    return LinearOp{"quarter-power-miscancelled",
                    [Tq, Th, Ths](const ScalarField& u, double t) {
                        const ScalarField re_h =
                            (Th.apply(u, t) + Ths.apply(u, t)).scaled(0.5);
                        return Tq.apply(u, t) - re_h;
                    }};
}

GronwallFit gronwall_fit(const std::vector<double>& t, const std::vector<double>& E,
                         const std::vector<double>& f) {
    require(t.size() >= 2 && t.size() == E.size() && t.size() == f.size(),
            "gronwall_fit: need matching traces with at least 2 samples");
    for (double e : E) require(e >= 0.0, "gronwall_fit: negative energy sample");
    const double t0 = t.front();
    const double e0 = std::sqrt(E.front());
    GronwallFit best;
    for (double lam = 0.0; lam <= 32.0 + 1e-12; lam += 0.25) {
        double integral = 0.0;
        double C = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0) {
                const double g0 = std::exp(-lam * (t[i - 1] - t0)) * f[i - 1];
                const double g1 = std::exp(-lam * (t[i] - t0)) * f[i];
                integral += 0.5 * (g0 + g1) * (t[i] - t[i - 1]);
            }
            const double den = std::exp(lam * (t[i] - t0)) * (e0 + integral);
            if (den <= 0.0) continue;
            C = std::max(C, std::sqrt(E[i]) / den);
        }
        best.lambda = lam;
        best.C = C;
        if (C <= 1.0 + 1e-9) {
            best.bounded = true;
            return best;
        }
    }
    best.bounded = false;
    return best;
}

}  // namespace zyg
