#include "zygwave/paraop.hpp"

#include <algorithm>
#include <cmath>

#include "zygwave/fft.hpp"
#include "zygwave/fit.hpp"
#include "zygwave/spaces.hpp"
#include "zygwave/threadpool.hpp"

namespace zyg {

ScalarField ParaOp::apply(const ScalarField& u, double t) const {
    const PeriodicGrid& g = sym_.grid;
    require(u.grid() == g, "paraop apply: grid mismatch");
    const int n = g.n;
    const auto s = sym_.slice(t, 0);

    if (sym_.x_independent) {
        std::vector<cplx> spec = u.spectrum();
        for (int ks = 0; ks < n; ++ks) {
            cplx w = s->at(ks, 0);
            if (adj_) w = std::conj(w);
            spec[ks] *= w;
        }
        spec[n / 2] = cplx(0.0, 0.0);
        return ScalarField::from_spectrum(g, std::move(spec));
    }

    std::vector<cplx> ph(n);
    for (int m = 0; m < n; ++m)
        ph[m] = std::polar(1.0, kTwoPi * static_cast<double>(m) / n);

    if (!adj_) {
        const auto& uh = u.spectrum();
        std::vector<cplx> out(static_cast<std::size_t>(n));
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
            cplx acc(0.0, 0.0);
            for (int ks = 0; ks < n; ++ks) {
                if (ks == n / 2) continue;
                acc += s->at(ks, static_cast<int>(j)) * uh[ks] *
                       ph[(static_cast<std::size_t>(ks) * j) % n];
            }
            out[j] = acc;
        });
        std::vector<cplx> spec(static_cast<std::size_t>(n));
        fft_analyze(n, 1, out.data(), spec.data());
        spec[n / 2] = cplx(0.0, 0.0);
        return ScalarField::from_spectrum(g, std::move(spec));
    }

    // Conjugate transpose: read samples, remove the (unpaired) Nyquist
    // component so the matrix adjoint is exact on the retained modes.
    const auto& smp = u.samples();
    const cplx nyq = u.spectrum()[n / 2];
    std::vector<cplx> spec(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ks) {
        if (static_cast<int>(ks) == n / 2) return;
        cplx acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const cplx v = smp[j] - nyq * (j % 2 == 0 ? 1.0 : -1.0);
            acc += std::conj(s->at(static_cast<int>(ks), j) *
                             ph[(ks * static_cast<std::size_t>(j)) % n]) *
                   v;
        }
        spec[ks] = acc / static_cast<double>(n);
    });
    return ScalarField::from_spectrum(g, std::move(spec));
}

ParaOp quantize(const Symbol& a) {
    require(a.grid.dim == 1, "quantize: one space dimension only");
    require(a.smoothed, "quantize: symbol must be smoothed");
    return ParaOp(a);
}

Symbol ensure_smoothed(const Symbol& a, const AdmissibleCutoff& psi) {
    return a.smoothed ? a : smooth_symbol(a, psi);
}

LinearOp op_of(const ParaOp& p, std::string name) {
    return LinearOp{std::move(name),
                    [p](const ScalarField& u, double t) { return p.apply(u, t); }};
}

LinearOp composition_remainder(const Symbol& a, const Symbol& b,
                               const AdmissibleCutoff& psi) {
    const Symbol as = ensure_smoothed(a, psi);
    const Symbol bs = ensure_smoothed(b, psi);
    const ParaOp Ta = quantize(as);
    const ParaOp Tb = quantize(bs);
    const ParaOp Tab = quantize(ensure_smoothed(symbol_product(a, b), psi));
    const Symbol corr =
        symbol_product(symbol_xi_derivative(as), symbol_x_derivative(bs));
    const ParaOp Tcorr = quantize(ensure_smoothed(corr, psi));
    return LinearOp{"composition-remainder",
                    [Ta, Tb, Tab, Tcorr](const ScalarField& u, double t) {
                        ScalarField y = Ta.apply(Tb.apply(u, t), t) - Tab.apply(u, t);
                        return y + Tcorr.apply(u, t).scaled(cplx(0.0, 1.0));
                    }};
}

LinearOp composition_remainder_naive(const Symbol& a, const Symbol& b,
                                     const AdmissibleCutoff& psi) {
    const ParaOp Ta = quantize(ensure_smoothed(a, psi));
    const ParaOp Tb = quantize(ensure_smoothed(b, psi));
    const ParaOp Tab = quantize(ensure_smoothed(symbol_product(a, b), psi));
    return LinearOp{"composition-difference",
                    [Ta, Tb, Tab](const ScalarField& u, double t) {
                        return Ta.apply(Tb.apply(u, t), t) - Tab.apply(u, t);
                    }};
}

LinearOp adjoint_remainder(const Symbol& a, const AdmissibleCutoff& psi) {
    const Symbol as = ensure_smoothed(a, psi);
    const ParaOp Tastar = quantize(as).adjoint();
    const ParaOp Tbar = quantize(ensure_smoothed(symbol_conj(a), psi));
    const Symbol corr = symbol_xi_derivative(symbol_x_derivative(symbol_conj(as)));
    const ParaOp Tcorr = quantize(corr);
    return LinearOp{"adjoint-remainder",
                    [Tastar, Tbar, Tcorr](const ScalarField& u, double t) {
                        ScalarField y = Tastar.apply(u, t) - Tbar.apply(u, t);
                        return y + Tcorr.apply(u, t).scaled(cplx(0.0, 1.0));
                    }};
}

LinearOp adjoint_remainder_naive(const Symbol& a, const AdmissibleCutoff& psi) {
    const ParaOp Tastar = quantize(ensure_smoothed(a, psi)).adjoint();
    const ParaOp Tbar = quantize(ensure_smoothed(symbol_conj(a), psi));
    return LinearOp{"adjoint-difference",
                    [Tastar, Tbar](const ScalarField& u, double t) {
                        return Tastar.apply(u, t) - Tbar.apply(u, t);
                    }};
}

namespace {

// Indicator mask for the gamma-band j (Nyquist excluded).
ScalarField band_field(const PeriodicGrid& g, double gamma, int j, Rng& rng,
                       bool& nonempty) {
    ScalarField u = random_white_field(g, rng);
    bool hit = false;
    ScalarField v = u.multiplier([&](const std::array<int, 2>& k) {
        const double lam = lambda_weight(k, g.dim, gamma);
        if (std::ilogb(lam) == j) {
            hit = true;
            return 1.0;
        }
        return 0.0;
    });
    nonempty = hit;
    return v;
}

}  // namespace

OrderFit operator_order_fit(const LinearOp& op, const PeriodicGrid& g, double gamma,
                            int jlo, int jhi, int trials, std::uint64_t seed,
                            double t) {
    require(jhi - jlo + 1 >= 4, "operator_order_fit: need at least 4 bands");
    require(trials >= 1, "operator_order_fit: trials must be >= 1");
    require((2 << jhi) <= g.n / 2, "operator_order_fit: top band unresolved");
    OrderFit fit;
    std::vector<std::array<double, 3>> rows;
    std::vector<double> ys;
    for (int j = jlo; j <= jhi; ++j) {
        Rng rng = substream(seed, "order-fit-band-" + std::to_string(j));
        double acc = 0.0;
        for (int tr = 0; tr < trials; ++tr) {
            bool nonempty = false;
            ScalarField u = band_field(g, gamma, j, rng, nonempty);
            require(nonempty, "operator_order_fit: empty frequency band");
            const double nu = u.l2();
            const double ny = std::max(op.apply(u, t).l2(), 1e-300);
            acc += std::log(ny / nu);
        }
        const double mean_log = acc / trials;
        fit.band_log_ratio.push_back(mean_log);
        rows.push_back({j * std::log(2.0), std::log1p(static_cast<double>(j)), 1.0});
        ys.push_back(mean_log);
    }
    const auto beta = lsq3(rows, ys, &fit.rms_resid);
    fit.m_hat = beta[0];
    fit.delta_hat = beta[1];
    fit.c_hat = beta[2];
    return fit;
}

namespace {

ScalarField lambda_power_apply(const ScalarField& u, double gamma, double p) {
    return u.multiplier([gamma, p](const std::array<int, 2>& k) {
        return std::pow(lambda_weight(k, 1, gamma), p);
    });
}

}  // namespace

PositivityResult positivity_gamma_search(const std::function<Symbol(double)>& family,
                                         double m, double accept_threshold,
                                         const PeriodicGrid& g, int trials,
                                         std::uint64_t seed, double t) {
    require(trials >= 1, "positivity search: trials must be >= 1");
    PositivityResult res;
    double best_lambda = -1e300;
    double best_gamma = 1.0;
    for (int e = 0; e <= 10; ++e) {
        const double gamma = std::ldexp(1.0, e);
        const Symbol sym = family(gamma);
        const ParaOp T = quantize(sym);
        const ParaOp Tstar = T.adjoint();
        auto stilde = [&](const ScalarField& u) {
            const ScalarField w = lambda_power_apply(u, gamma, -m / 2.0);
            const ScalarField y = (T.apply(w, t) + Tstar.apply(w, t)).scaled(0.5);
            return lambda_power_apply(y, gamma, -m / 2.0);
        };
        Rng rng = substream(seed, "positivity-" + std::to_string(e));
        double ray_min = 1e300;
        for (int tr = 0; tr < trials; ++tr) {
            const ScalarField u = random_white_field(g, rng);
            const double n2 = u.l2() * u.l2();
            const double q = stilde(u).inner(u).real() / n2;
            ray_min = std::min(ray_min, q);
        }
        // Power iteration: largest eigenvalue of S, then of c I - S, giving a
        // sharper estimate of the smallest eigenvalue than random quotients.
        auto power_top = [&](const std::function<ScalarField(const ScalarField&)>& A) {
            ScalarField z = random_white_field(g, rng);
            double lam = 0.0;
            for (int it = 0; it < 10; ++it) {
                const double nz = z.l2();
                if (nz == 0.0) break;
                z = z.scaled(1.0 / nz);
                const ScalarField y = A(z);
                lam = y.inner(z).real();
                z = y;
            }
            return lam;
        };
        const double top = power_top(stilde);
        const double c = std::max(top, std::abs(ray_min)) * 1.25 + 1.0;
        const double reflected =
            power_top([&](const ScalarField& u) { return u.scaled(c) - stilde(u); });
        const double lam_min_est = c - reflected;
        const double lam1 = std::min(ray_min, lam_min_est);
        res.trace.emplace_back(gamma, lam1);
        if (lam1 > best_lambda) {
            best_lambda = lam1;
            best_gamma = gamma;
        }
        if (lam1 >= accept_threshold) {
            res.found = true;
            res.gamma_star = gamma;
            res.lambda_min = lam1;
            return res;
        }
    }
    res.found = false;
    res.gamma_star = best_gamma;
    res.lambda_min = best_lambda;
    return res;
}

EquivalenceReport garding_equivalence_check(const ParaOp& op, double m, double gamma,
                                            int trials, std::uint64_t seed, double t) {
    require(trials >= 1, "equivalence check: trials must be >= 1");
    Rng rng = substream(seed, "garding-equivalence");
    EquivalenceReport rep;
    rep.c_lo = 1e300;
    rep.c_hi = 0.0;
    const NormSpec spec{m, 0.0, gamma, NormSpec::Mode::direct};
    for (int tr = 0; tr < trials; ++tr) {
        const ScalarField u =
            random_bandlimited_field(op.symbol().grid, op.symbol().grid.n / 4, rng);
        const double den = log_sobolev_norm(u, spec);
        const double ratio = op.apply(u, t).l2() / den;
        rep.c_lo = std::min(rep.c_lo, ratio);
        rep.c_hi = std::max(rep.c_hi, ratio);
    }
    return rep;
}

}  // namespace zyg
