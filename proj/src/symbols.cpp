#include "zygwave/symbols.hpp"

#include <algorithm>
#include <cmath>

#include "zygwave/fft.hpp"
#include "zygwave/threadpool.hpp"

namespace zyg {

// ---------------------------------------------------------------- caching

std::shared_ptr<const Slice> SymbolImpl::slice(const PeriodicGrid& g, double t,
                                               int deriv) const {
    for (auto& e : cache_) {
        if (e.deriv == deriv && e.t == t) {
            e.stamp = ++stamp_;
            return e.s;
        }
    }
    auto s = std::make_shared<Slice>(compute(g, t, deriv));
    CacheEnt ent{t, deriv, ++stamp_, s};
    if (cache_.size() < 3) {
        cache_.push_back(std::move(ent));
    } else {
        std::size_t oldest = 0;
        for (std::size_t i = 1; i < cache_.size(); ++i)
            if (cache_[i].stamp < cache_[oldest].stamp) oldest = i;
        cache_[oldest] = std::move(ent);
    }
    return s;
}

// ---------------------------------------------------------------- cutoff

double AdmissibleCutoff::psi(double eta_abs, double xi_abs) const {
    const int mi = mu - 3;
    double p = base.chi(std::ldexp(eta_abs, -mi)) * base.chi(std::ldexp(xi_abs, -(mi + 2)));
    for (int k = mi + 3; k <= kmax; ++k)
        p += base.chi(std::ldexp(eta_abs, -(k - 3))) * base.phi(std::ldexp(xi_abs, -k));
    return p;
}

AdmissibleCutoff build_cutoff(double gamma, const PeriodicGrid& g, CutoffBridge bridge) {
    require(gamma >= 1.0, "build_cutoff: gamma must be >= 1");
    require(g.n >= 32, "build_cutoff: grid too small");
    const int half = g.n / 2;
    for (int mu_int = -3; mu_int <= 40; ++mu_int) {
        AdmissibleCutoff c;
        c.mu = mu_int + 3;
        c.gamma = gamma;
        c.base.bridge = bridge;
        int kmax = mu_int + 3;
        while (std::ldexp(static_cast<double>(half), -kmax) > 1.0) ++kmax;
        c.kmax = kmax;
        bool ok = true;
        double plateau_inf = 1.0;  // min ratio |eta|/(gamma+|xi|) where psi < 1
        double support_sup = 0.0;  // max ratio where psi > 0
        for (int eta = 0; eta <= half && ok; ++eta) {
            for (int xi = 0; xi <= half; ++xi) {
                const double p = c.psi(eta, xi);
                const double ratio = eta / (gamma + xi);
                if (eta <= gamma / 8.0 && p < 1.0 - 1e-12) {
                    ok = false;
                    break;
                }
                if (ratio >= 0.5 && p != 0.0) {
                    ok = false;
                    break;
                }
                if (eta > 0 && p < 1.0 - 1e-12) plateau_inf = std::min(plateau_inf, ratio);
                if (p != 0.0) support_sup = std::max(support_sup, ratio);
            }
        }
        if (!ok) continue;
        c.eps1 = plateau_inf * (1.0 - 1e-12);
        c.eps2 = std::min(support_sup * (1.0 + 1e-12), 1.0 - 1e-12);
        require(c.eps1 > 0.0 && c.eps1 < c.eps2 && c.eps2 < 1.0,
                "build_cutoff: degenerate transition constants");
        return c;
    }
    throw precondition_error("build_cutoff: no admissible mu found");
}

int lambda_band(double xi_abs, double gamma) {
    return std::ilogb(lambda_weight_abs(xi_abs, gamma));
}

// ------------------------------------------------------------ primitive impls

namespace {

Slice make_slice(const PeriodicGrid& g) {
    Slice s;
    s.nxi = g.n;
    s.nx = g.n;
    s.v.assign(static_cast<std::size_t>(g.n) * g.n, cplx(0.0, 0.0));
    return s;
}

class MultiplierImpl final : public SymbolImpl {
  public:
    explicit MultiplierImpl(std::vector<double> vals) : vals_(std::move(vals)) {}

  protected:
    Slice compute(const PeriodicGrid& g, double, int deriv) const override {
        Slice s = make_slice(g);
        if (deriv == 0) {
            for (int xi = 0; xi < g.n; ++xi)
                for (int ix = 0; ix < g.n; ++ix) s.at(xi, ix) = vals_[xi];
        }
        return s;
    }

  private:
    std::vector<double> vals_;  // indexed by xi storage position
};

class StaticProfileImpl final : public SymbolImpl {
  public:
    explicit StaticProfileImpl(std::vector<double> prof) : prof_(std::move(prof)) {}

  protected:
    Slice compute(const PeriodicGrid& g, double, int deriv) const override {
        Slice s = make_slice(g);
        if (deriv == 0) {
            for (int xi = 0; xi < g.n; ++xi)
                for (int ix = 0; ix < g.n; ++ix) s.at(xi, ix) = prof_[ix];
        }
        return s;
    }

  private:
    std::vector<double> prof_;
};

class CoefficientImpl final : public SymbolImpl {
  public:
    explicit CoefficientImpl(CoefficientField a) : a_(std::move(a)) {}

  protected:
    Slice compute(const PeriodicGrid& g, double t, int deriv) const override {
        Slice s = make_slice(g);
        const std::vector<double> row = coefficient_profile(a_, t, deriv);
        for (int xi = 0; xi < g.n; ++xi)
            for (int ix = 0; ix < g.n; ++ix) s.at(xi, ix) = row[ix];
        return s;
    }

  private:
    CoefficientField a_;
};

class AlphaImpl final : public SymbolImpl {
  public:
    AlphaImpl(CoefficientField a, double gamma, const MollifierKernel& ker,
              EpsLinkage linkage, double fixed_eps, int jbmax, bool mollify)
        : a_(std::move(a)), gamma_(gamma), linkage_(linkage), jbmax_(jbmax),
          mollify_(mollify) {
        if (!mollify_) return;
        const int nb = linkage_ == EpsLinkage::banded ? jbmax_ + 1 : 1;
        for (int b = 0; b < nb; ++b) {
            const double eps =
                linkage_ == EpsLinkage::banded ? std::ldexp(1.0, -b) : fixed_eps;
            if (a_.has_generator) {
                gens_.push_back(a_.gen.mollified(eps, ker));
            } else {
                tabs_.push_back(mollify_time(a_, eps, ker));
            }
        }
    }

  protected:
    Slice compute(const PeriodicGrid& g, double t, int deriv) const override {
        Slice s = make_slice(g);
        const int nb = mollify_ && linkage_ == EpsLinkage::banded ? jbmax_ + 1 : 1;
        std::vector<std::vector<double>> prof(nb);
        for (int b = 0; b < nb; ++b) {
            if (!mollify_) {
                prof[b] = coefficient_profile(a_, t, deriv);
            } else if (a_.has_generator) {
                prof[b].resize(g.size());
                for (std::size_t m = 0; m < g.size(); ++m) {
                    const auto x = g.coord(m);
                    prof[b][m] = deriv == 0   ? gens_[b].eval(t, x)
                                 : deriv == 1 ? gens_[b].eval_dt(t, x)
                                              : gens_[b].eval_dtt(t, x);
                }
            } else {
                prof[b] = coefficient_profile(tabs_[b], t, deriv);
            }
        }
        const double g2 = deriv == 0 ? gamma_ * gamma_ : 0.0;
        for (int xi = 0; xi < g.n; ++xi) {
            const int kv = xi < g.n / 2 ? xi : xi - g.n;
            const double kabs = std::abs(static_cast<double>(kv));
            const double k2 = kabs * kabs;
            const int b = nb == 1 ? 0 : std::min(lambda_band(kabs, gamma_), jbmax_);
            const std::vector<double>& row = prof[b];
            for (int ix = 0; ix < g.n; ++ix) s.at(xi, ix) = row[ix] * k2 + g2;
        }
        return s;
    }

  private:
    CoefficientField a_;
    double gamma_;
    EpsLinkage linkage_;
    int jbmax_;
    bool mollify_;
    std::vector<CoefficientGenerator> gens_;
    std::vector<CoefficientField> tabs_;
};

class PowerImpl final : public SymbolImpl {
  public:
    PowerImpl(Symbol base, double p) : base_(std::move(base)), p_(p) {}

  protected:
    Slice compute(const PeriodicGrid& g, double t, int deriv) const override {
        const auto s0 = base_.slice(t, 0);
        Slice out = make_slice(g);
        const std::size_t total = out.v.size();
        for (std::size_t i = 0; i < total; ++i)
            require(s0->v[i].real() > 0.0, "symbol_power: non-positive symbol");
        if (deriv == 0) {
            for (std::size_t i = 0; i < total; ++i)
                out.v[i] = std::pow(s0->v[i].real(), p_);
            return out;
        }
        const auto s1 = base_.slice(t, 1);
        if (deriv == 1) {
            for (std::size_t i = 0; i < total; ++i)
                out.v[i] = p_ * std::pow(s0->v[i].real(), p_ - 1.0) * s1->v[i];
            return out;
        }
        const auto s2 = base_.slice(t, 2);
        for (std::size_t i = 0; i < total; ++i) {
            const double b = s0->v[i].real();
            const cplx d1 = s1->v[i];
            out.v[i] = p_ * (p_ - 1.0) * std::pow(b, p_ - 2.0) * d1 * d1 +
                       p_ * std::pow(b, p_ - 1.0) * s2->v[i];
        }
        return out;
    }

  private:
    Symbol base_;
    double p_;
};

class TimeDerivImpl final : public SymbolImpl {
  public:
    TimeDerivImpl(Symbol base, int k) : base_(std::move(base)), k_(k) {}

  protected:
    Slice compute(const PeriodicGrid&, double t, int deriv) const override {
        require(deriv + k_ <= 2, "symbol time derivative: total order exceeds 2");
        return *base_.slice(t, deriv + k_);
    }

  private:
    Symbol base_;
    int k_;
};

// Storage index of signed frequency value (requires -n/2 <= v <= n/2 - 1).
int storage_of_value(int v, int n) { return v < 0 ? v + n : v; }

class XiDerivImpl final : public SymbolImpl {
  public:
    explicit XiDerivImpl(Symbol base) : base_(std::move(base)) {}

  protected:
    Slice compute(const PeriodicGrid& g, double t, int deriv) const override {
        const auto s = base_.slice(t, deriv);
        Slice out = make_slice(g);
        const int n = g.n;
        for (int xi = 0; xi < n; ++xi) {
            const int k = xi < n / 2 ? xi : xi - n;
            const bool has_plus = k + 1 <= n / 2 - 1;
            const bool has_minus = k - 1 >= -n / 2;
            int hi = has_plus ? storage_of_value(k + 1, n) : xi;
            int lo = has_minus ? storage_of_value(k - 1, n) : xi;
            const double den = (has_plus && has_minus) ? 2.0 : 1.0;
            for (int ix = 0; ix < n; ++ix)
                out.at(xi, ix) = (s->at(hi, ix) - s->at(lo, ix)) / den;
        }
        return out;
    }

  private:
    Symbol base_;
};

class XDerivImpl final : public SymbolImpl {
  public:
    explicit XDerivImpl(Symbol base) : base_(std::move(base)) {}

  protected:
    Slice compute(const PeriodicGrid& g, double t, int deriv) const override {
        Slice out = *base_.slice(t, deriv);
        const int n = g.n;
        fft_analyze_many(n, static_cast<std::size_t>(n), out.v.data());
        for (int xi = 0; xi < n; ++xi) {
            cplx* col = out.v.data() + static_cast<std::size_t>(xi) * n;
            for (int r = 0; r < n; ++r) {
                const int eta = r < n / 2 ? r : r - n;
                col[r] *= (r == n / 2) ? cplx(0.0, 0.0) : cplx(0.0, eta);
            }
        }
        fft_synthesize_many(n, static_cast<std::size_t>(n), out.v.data());
        return out;
    }

  private:
    Symbol base_;
};

class ProductImpl final : public SymbolImpl {
  public:
    ProductImpl(Symbol a, Symbol b) : a_(std::move(a)), b_(std::move(b)) {}

  protected:
    Slice compute(const PeriodicGrid& g, double t, int deriv) const override {
        Slice out = make_slice(g);
        const std::size_t total = out.v.size();
        const auto a0 = a_.slice(t, 0);
        const auto b0 = b_.slice(t, 0);
        if (deriv == 0) {
            for (std::size_t i = 0; i < total; ++i) out.v[i] = a0->v[i] * b0->v[i];
            return out;
        }
        const auto a1 = a_.slice(t, 1);
        const auto b1 = b_.slice(t, 1);
        if (deriv == 1) {
            for (std::size_t i = 0; i < total; ++i)
                out.v[i] = a1->v[i] * b0->v[i] + a0->v[i] * b1->v[i];
            return out;
        }
        const auto a2 = a_.slice(t, 2);
        const auto b2 = b_.slice(t, 2);
        for (std::size_t i = 0; i < total; ++i)
            out.v[i] = a2->v[i] * b0->v[i] + 2.0 * a1->v[i] * b1->v[i] +
                       a0->v[i] * b2->v[i];
        return out;
    }

  private:
    Symbol a_, b_;
};

class ConjImpl final : public SymbolImpl {
  public:
    explicit ConjImpl(Symbol base) : base_(std::move(base)) {}

  protected:
    Slice compute(const PeriodicGrid&, double t, int deriv) const override {
        Slice out = *base_.slice(t, deriv);
        for (auto& z : out.v) z = std::conj(z);
        return out;
    }

  private:
    Symbol base_;
};

class SmoothedImpl final : public SymbolImpl {
  public:
    SmoothedImpl(Symbol base, AdmissibleCutoff psi)
        : base_(std::move(base)), psi_(std::move(psi)) {}

  protected:
    Slice compute(const PeriodicGrid& g, double t, int deriv) const override {
        Slice out = *base_.slice(t, deriv);
        const int n = g.n;
        fft_analyze_many(n, static_cast<std::size_t>(n), out.v.data());
        // Weight table psi(|eta|, |xi|) depends only on magnitudes.
        std::vector<double> w(static_cast<std::size_t>(n / 2 + 1) * (n / 2 + 1));
        parallel_for(static_cast<std::size_t>(n / 2 + 1), [&](std::size_t e) {
            for (int x = 0; x <= n / 2; ++x)
                w[e * (n / 2 + 1) + x] =
                    psi_.psi(static_cast<double>(e), static_cast<double>(x));
        });
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t xi) {
            const int kv = static_cast<int>(xi) < n / 2 ? static_cast<int>(xi)
                                                        : static_cast<int>(xi) - n;
            const int ka = std::abs(kv);
            cplx* col = out.v.data() + xi * n;
            for (int r = 0; r < n; ++r) {
                const int eta = r < n / 2 ? r : r - n;
                col[r] *= w[static_cast<std::size_t>(std::abs(eta)) * (n / 2 + 1) + ka];
            }
        });
        fft_synthesize_many(n, static_cast<std::size_t>(n), out.v.data());
        return out;
    }

  private:
    Symbol base_;
    AdmissibleCutoff psi_;
};

TimeGrid default_tg() { return TimeGrid{0.0, 1.0, 2}; }

}  // namespace

// ---------------------------------------------------------------- factories

Symbol multiplier_symbol(const PeriodicGrid& g, const TimeGrid& tg, double gamma,
                         double order, const std::function<double(double)>& fn) {
    require(g.dim == 1, "symbols are one-dimensional");
    std::vector<double> vals(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        const int k = static_cast<int>(m) < g.n / 2 ? static_cast<int>(m)
                                                    : static_cast<int>(m) - g.n;
        vals[m] = fn(static_cast<double>(k));
    }
    Symbol s;
    s.impl = std::make_shared<MultiplierImpl>(std::move(vals));
    s.grid = g;
    s.tg = tg;
    s.order = order;
    s.gamma = gamma;
    s.smoothed = true;
    s.x_independent = true;
    return s;
}

Symbol lambda_power_symbol(const PeriodicGrid& g, const TimeGrid& tg, double gamma,
                           double sexp) {
    return multiplier_symbol(g, tg, gamma, sexp, [gamma, sexp](double k) {
        return std::pow(lambda_weight_abs(std::abs(k), gamma), sexp);
    });
}

Symbol coefficient_symbol(const CoefficientField& a, double gamma) {
    require(a.grid.dim == 1, "symbols are one-dimensional");
    Symbol s;
    s.impl = std::make_shared<CoefficientImpl>(a);
    s.grid = a.grid;
    s.tg = a.tg;
    s.order = 0.0;
    s.gamma = gamma;
    return s;
}

Symbol static_profile_symbol(const PeriodicGrid& g, const TimeGrid& tg, double gamma,
                             const std::vector<double>& profile) {
    require(g.dim == 1, "symbols are one-dimensional");
    require(profile.size() == g.size(), "static_profile_symbol: profile size mismatch");
    Symbol s;
    s.impl = std::make_shared<StaticProfileImpl>(profile);
    s.grid = g;
    s.tg = tg;
    s.order = 0.0;
    s.gamma = gamma;
    return s;
}

Symbol build_alpha(const CoefficientField& a, double gamma, const MollifierKernel& ker,
                   EpsLinkage linkage, double fixed_eps) {
    require(a.grid.dim == 1, "symbols are one-dimensional");
    require(gamma >= 1.0, "build_alpha: gamma must be >= 1");
    require(a.lam0 > 0.0 && a.Lam0 >= a.lam0, "build_alpha: coefficient not elliptic");
    if (linkage == EpsLinkage::fixed)
        require(fixed_eps > 0.0 && fixed_eps <= 1.0,
                "build_alpha: fixed eps must lie in (0,1]");
    const int jbmax = lambda_band(a.grid.n / 2.0, gamma);
    Symbol s;
    s.impl = std::make_shared<AlphaImpl>(a, gamma, ker, linkage, fixed_eps, jbmax, true);
    s.grid = a.grid;
    s.tg = a.tg;
    s.order = 2.0;
    s.gamma = gamma;
    s.x_independent = !a.has_generator ? false : a.gen.comps.empty();
    s.smoothed = s.x_independent;
    return s;
}

Symbol build_alpha_tilde(const CoefficientField& a, double gamma) {
    require(a.grid.dim == 1, "symbols are one-dimensional");
    require(gamma >= 1.0, "build_alpha_tilde: gamma must be >= 1");
    require(a.lam0 > 0.0 && a.Lam0 >= a.lam0,
            "build_alpha_tilde: coefficient not elliptic");
    MollifierKernel unused;
    const int jbmax = lambda_band(a.grid.n / 2.0, gamma);
    Symbol s;
    s.impl = std::make_shared<AlphaImpl>(a, gamma, unused, EpsLinkage::fixed, 1.0,
                                         jbmax, false);
    s.grid = a.grid;
    s.tg = a.tg;
    s.order = 2.0;
    s.gamma = gamma;
    s.x_independent = !a.has_generator ? false : a.gen.comps.empty();
    s.smoothed = s.x_independent;
    return s;
}

namespace {

bool components_x_free(const CoefficientField& a) {
    if (!a.has_generator) return false;
    for (const auto& c : a.gen.comps)
        if (c.qx != 0.0 || c.qy != 0.0) return false;
    return true;
}

}  // namespace

Symbol symbol_power(const Symbol& a, double p) {
    Symbol s;
    s.impl = std::make_shared<PowerImpl>(a, p);
    s.grid = a.grid;
    s.tg = a.tg;
    s.order = p * a.order;
    s.log_order = 0.0;
    s.gamma = a.gamma;
    s.x_independent = a.x_independent;
    s.smoothed = a.x_independent;  // powers break spectral confinement otherwise
    return s;
}

Symbol symbol_time_derivative(const Symbol& a, int order) {
    require(order == 1 || order == 2, "symbol_time_derivative: order must be 1 or 2");
    Symbol s = a;
    s.impl = std::make_shared<TimeDerivImpl>(a, order);
    return s;
}

Symbol symbol_xi_derivative(const Symbol& a) {
    Symbol s = a;
    s.impl = std::make_shared<XiDerivImpl>(a);
    s.order = a.order - 1.0;
    return s;
}

Symbol symbol_x_derivative(const Symbol& a) {
    Symbol s = a;
    s.impl = std::make_shared<XDerivImpl>(a);
    s.x_independent = false;
    return s;
}

Symbol symbol_product(const Symbol& a, const Symbol& b) {
    require(a.grid == b.grid, "symbol_product: grid mismatch");
    Symbol s;
    s.impl = std::make_shared<ProductImpl>(a, b);
    s.grid = a.grid;
    s.tg = a.tg;
    s.order = a.order + b.order;
    s.log_order = a.log_order + b.log_order;
    s.gamma = a.gamma;
    s.x_independent = a.x_independent && b.x_independent;
    s.smoothed = (a.x_independent && b.smoothed) || (b.x_independent && a.smoothed);
    return s;
}

Symbol symbol_conj(const Symbol& a) {
    Symbol s = a;
    s.impl = std::make_shared<ConjImpl>(a);
    return s;
}

Symbol smooth_symbol(const Symbol& a, const AdmissibleCutoff& psi) {
    require(!a.smoothed, "smooth_symbol: symbol already smoothed");
    Symbol s = a;
    s.impl = std::make_shared<SmoothedImpl>(a, psi);
    s.smoothed = true;
    return s;
}

// ---------------------------------------------------------------- functionals

namespace {

std::vector<double> probe_times(const TimeGrid& tg, int cap) {
    std::vector<double> ts;
    const int count = std::min(cap, tg.nt);
    for (int i = 0; i < count; ++i)
        ts.push_back(tg.t0 + (tg.T - tg.t0) * (count == 1 ? 0.0 : double(i) / (count - 1)));
    return ts;
}

Slice xi_diff_slice(const Slice& s, const PeriodicGrid& g) {
    Slice out;
    out.nxi = s.nxi;
    out.nx = s.nx;
    out.v.assign(s.v.size(), cplx(0.0, 0.0));
    const int n = g.n;
    for (int xi = 0; xi < n; ++xi) {
        const int k = xi < n / 2 ? xi : xi - n;
        const bool has_plus = k + 1 <= n / 2 - 1;
        const bool has_minus = k - 1 >= -n / 2;
        const int hi = has_plus ? storage_of_value(k + 1, n) : xi;
        const int lo = has_minus ? storage_of_value(k - 1, n) : xi;
        const double den = (has_plus && has_minus) ? 2.0 : 1.0;
        for (int ix = 0; ix < n; ++ix)
            out.at(xi, ix) = (s.at(hi, ix) - s.at(lo, ix)) / den;
    }
    return out;
}

}  // namespace

double symbol_seminorm(const Symbol& a, double m, double delta, int k) {
    require(k >= 0 && k <= 2, "symbol_seminorm: k must be 0, 1 or 2");
    const PeriodicGrid& g = a.grid;
    double best = 0.0;
    for (double t : probe_times(a.tg, 5)) {
        Slice cur = *a.slice(t, 0);
        for (int ord = 0; ord <= k; ++ord) {
            if (ord > 0) cur = xi_diff_slice(cur, g);
            for (int xi = 0; xi < g.n; ++xi) {
                const int kv = xi < g.n / 2 ? xi : xi - g.n;
                const double base = a.gamma + std::abs(static_cast<double>(kv));
                const double wgt = std::pow(base, -m + ord) *
                                   std::pow(std::log(1.0 + base), -delta);
                for (int ix = 0; ix < g.n; ++ix)
                    best = std::max(best, wgt * std::abs(cur.at(xi, ix)));
            }
        }
    }
    return best;
}

double symbol_zygmund_constant(const Symbol& a, double m, double delta) {
    const PeriodicGrid& g = a.grid;
    const TimeGrid& tg = a.tg;
    const double dt = tg.dt(), dx = g.dx();
    const int n = g.n;
    // Column weights (gamma+|xi|)^m log^delta(1+gamma+|xi|).
    std::vector<double> wgt(n);
    for (int xi = 0; xi < n; ++xi) {
        const int kv = xi < n / 2 ? xi : xi - n;
        const double base = a.gamma + std::abs(static_cast<double>(kv));
        wgt[xi] = std::pow(base, m) * std::pow(std::log(1.0 + base), delta);
    }
    std::vector<int> tsteps{0}, xsteps{0};
    for (int s = 1; s * dt < std::min(1.0, 0.25 * (tg.T - tg.t0)) && tsteps.size() < 8;
         s *= 2)
        tsteps.push_back(s);
    for (int s = 1; s * dx < 1.0 && s < n / 2 && xsteps.size() < 8; s *= 2)
        xsteps.push_back(s);
    double best = 0.0;
    for (double t : probe_times(TimeGrid{tg.t0 + 0.25 * (tg.T - tg.t0),
                                         tg.T - 0.25 * (tg.T - tg.t0), tg.nt},
                                3)) {
        for (int i : tsteps) {
            const double tau = i * dt;
            const auto sp = a.slice(t + tau, 0);
            const auto sm = a.slice(t - tau, 0);
            const auto s0 = a.slice(t, 0);
            for (int j : xsteps) {
                if (i == 0 && j == 0) continue;
                const double den_shift = tau + j * dx;
                for (int xi = 0; xi < n; ++xi) {
                    const cplx* cp = sp->v.data() + static_cast<std::size_t>(xi) * n;
                    const cplx* cm = sm->v.data() + static_cast<std::size_t>(xi) * n;
                    const cplx* c0 = s0->v.data() + static_cast<std::size_t>(xi) * n;
                    double sup = 0.0;
                    for (int ix = 0; ix < n; ++ix) {
                        const cplx d = cp[(ix + j) % n] + cm[(ix + n - j) % n] -
                                       2.0 * c0[ix];
                        sup = std::max(sup, std::abs(d));
                    }
                    best = std::max(best, sup / (den_shift * wgt[xi]));
                }
            }
        }
    }
    return best;
}

}  // namespace zyg
