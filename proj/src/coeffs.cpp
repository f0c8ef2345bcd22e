#include "zygwave/coeffs.hpp"

#include <algorithm>
#include <cmath>

#include "zygwave/fit.hpp"
#include "zygwave/spaces.hpp"
#include "zygwave/threadpool.hpp"

namespace zyg {

TimeGrid make_time_grid(double t0, double T, int nt) {
    require(nt >= 2, "make_time_grid: need at least 2 samples");
    require(T > t0, "make_time_grid: need T > t0");
    return TimeGrid{t0, T, nt};
}

double CoefficientGenerator::eval(double t, const std::array<double, 2>& x) const {
    double v = offset;
    for (const auto& c : comps)
        v += c.amp * std::cos(c.pt * t + c.qx * x[0] + c.qy * x[1] + c.phase);
    return v;
}

double CoefficientGenerator::eval_dt(double t, const std::array<double, 2>& x) const {
    double v = 0.0;
    for (const auto& c : comps)
        v -= c.amp * c.pt * std::sin(c.pt * t + c.qx * x[0] + c.qy * x[1] + c.phase);
    return v;
}

double CoefficientGenerator::eval_dtt(double t, const std::array<double, 2>& x) const {
    double v = 0.0;
    for (const auto& c : comps)
        v -= c.amp * c.pt * c.pt * std::cos(c.pt * t + c.qx * x[0] + c.qy * x[1] + c.phase);
    return v;
}

CoefficientGenerator CoefficientGenerator::mollified(double eps,
                                                     const MollifierKernel& ker) const {
    CoefficientGenerator out = *this;
    for (auto& c : out.comps) c.amp *= ker.chat(eps * c.pt);
    return out;
}

double MollifierKernel::chat(double s) const {
    double v = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) v += w_rho[i] * std::cos(s * nodes[i]);
    return v;
}

double MollifierKernel::moment_abs() const {
    double v = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) v += w_rho[i] * std::abs(nodes[i]);
    return v;
}

namespace {

double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

double bump_d1(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double w = 1.0 - s * s;
    return bump(s) * (-2.0 * s / (w * w));
}

double bump_d2(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double w = 1.0 - s * s;
    const double u1 = -2.0 * s / (w * w);                      // (log rho)'
    const double u2 = -2.0 / (w * w) - 8.0 * s * s / (w * w * w);  // (log rho)''
    return bump(s) * (u2 + u1 * u1);
}

}  // namespace

MollifierKernel make_mollifier(int nodes) {
    require(nodes >= 5 && nodes % 2 == 1, "make_mollifier: nodes must be odd and >= 5");
    MollifierKernel k;
    k.nodes.resize(nodes);
    k.w_rho.resize(nodes);
    k.w_drho.resize(nodes);
    k.w_ddrho.resize(nodes);
    const double h = 2.0 / (nodes - 1);
    double mass = 0.0;
    std::vector<double> sw(nodes);
    for (int i = 0; i < nodes; ++i) {
        k.nodes[i] = -1.0 + i * h;
        const bool end = (i == 0 || i == nodes - 1);
        sw[i] = (h / 3.0) * (end ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
        mass += sw[i] * bump(k.nodes[i]);
    }
    for (int i = 0; i < nodes; ++i) {
        k.w_rho[i] = sw[i] * bump(k.nodes[i]) / mass;
        k.w_drho[i] = sw[i] * bump_d1(k.nodes[i]) / mass;
        k.w_ddrho[i] = sw[i] * bump_d2(k.nodes[i]) / mass;
    }
    return k;
}

std::vector<double> CoefficientField::time_slice(int it) const {
    const std::size_t g = grid.size();
    std::vector<double> r(g);
    for (std::size_t m = 0; m < g; ++m) r[m] = at(it, m);
    return r;
}

std::vector<double> CoefficientField::space_column(std::size_t m) const {
    std::vector<double> r(tg.nt);
    for (int it = 0; it < tg.nt; ++it) r[it] = at(it, m);
    return r;
}

CoefficientField sample_generator(const CoefficientGenerator& gen, const TimeGrid& tg,
                                  const PeriodicGrid& grid, RegClass cls, double lam0,
                                  double Lam0) {
    CoefficientField f;
    f.tg = tg;
    f.grid = grid;
    f.cls = cls;
    f.lam0 = lam0;
    f.Lam0 = Lam0;
    f.has_generator = true;
    f.gen = gen;
    const std::size_t g = grid.size();
    f.values.resize(static_cast<std::size_t>(tg.nt) * g);
    parallel_for(static_cast<std::size_t>(tg.nt), [&](std::size_t it) {
        const double t = tg.time(static_cast<int>(it));
        for (std::size_t m = 0; m < g; ++m)
            f.values[it * g + m] = gen.eval(t, grid.coord(m));
    });
    return f;
}

CoefficientField constant_coefficient(double c, const TimeGrid& tg,
                                      const PeriodicGrid& grid) {
    CoefficientGenerator gen;
    gen.offset = c;
    return sample_generator(gen, tg, grid, RegClass::lipschitz, c, c);
}

namespace {

// Frequencies (p, q) with |(p,q)| = 2^j on the requested axes.
void rough_frequencies(RoughAxis axis, int j, Rng& rng, double* p, double* q) {
    const double r = std::ldexp(1.0, j);
    switch (axis) {
        case RoughAxis::t:
            *p = r;
            *q = 0.0;
            return;
        case RoughAxis::x:
            *p = 0.0;
            *q = r;
            return;
        case RoughAxis::tx: {
            const double th = rng.uniform(0.0, kTwoPi);
            double qq = std::round(r * std::sin(th));
            qq = std::min(qq, r);
            qq = std::max(qq, -r);
            const double pp = std::copysign(std::sqrt(std::max(0.0, r * r - qq * qq)),
                                            std::cos(th));
            *p = pp;
            *q = qq;
            return;
        }
    }
}

void check_resolution(RoughAxis axis, int J, const TimeGrid& tg,
                      const PeriodicGrid& grid) {
    const double r = std::ldexp(1.0, J);
    if (axis == RoughAxis::x || axis == RoughAxis::tx) {
        require(grid.dim == 1, "rough coefficient: x-axis roughness needs dim 1");
        require(r < grid.n / 2.0, "rough coefficient: 2^J exceeds the space grid");
    }
    if (axis == RoughAxis::t || axis == RoughAxis::tx) {
        require(r < kPi / tg.dt(), "rough coefficient: 2^J exceeds the time grid");
    }
}

CoefficientField scaled_sum_field(const std::vector<CosineComponent>& raw,
                                  double amp_sum, double lam0, double Lam0,
                                  RegClass cls, const TimeGrid& tg,
                                  const PeriodicGrid& grid) {
    require(Lam0 > lam0 && lam0 > 0.0, "rough coefficient: need 0 < lam0 < Lam0");
    CoefficientGenerator gen;
    gen.offset = lam0 + 0.5 * (Lam0 - lam0);
    gen.comps = raw;
    const double scale = 0.5 * (Lam0 - lam0) / amp_sum;
    for (auto& c : gen.comps) c.amp *= scale;
    return sample_generator(gen, tg, grid, cls, lam0, Lam0);
}

}  // namespace

CoefficientField weierstrass_zygmund(int J, std::uint64_t seed, RoughAxis axis,
                                     double lam0, double Lam0, const TimeGrid& tg,
                                     const PeriodicGrid& grid) {
    require(J >= 1, "weierstrass_zygmund: J must be >= 1");
    check_resolution(axis, J, tg, grid);
    Rng rng = substream(seed, "weierstrass");
    std::vector<CosineComponent> comps;
    double amp_sum = 0.0;
    for (int j = 1; j <= J; ++j) {
        CosineComponent c;
        c.amp = std::ldexp(1.0, -j);
        c.phase = rng.uniform(0.0, kTwoPi);
        rough_frequencies(axis, j, rng, &c.pt, &c.qx);
        comps.push_back(c);
        amp_sum += c.amp;
    }
    return scaled_sum_field(comps, amp_sum, lam0, Lam0, RegClass::zygmund, tg, grid);
}

CoefficientField smooth_x_zygmund_t(int J, std::uint64_t seed, double lam0,
                                    double Lam0, const TimeGrid& tg,
                                    const PeriodicGrid& grid) {
    require(J >= 1, "smooth_x_zygmund_t: J must be >= 1");
    check_resolution(RoughAxis::t, J, tg, grid);
    Rng rng = substream(seed, "smooth-x-rough-t");
    std::vector<CosineComponent> comps;
    double amp_sum = 0.0;
    for (int j = 1; j <= J; ++j) {
        CosineComponent c;
        c.amp = std::ldexp(1.0, -j);
        c.pt = std::ldexp(1.0, j);
        c.qx = std::floor(rng.uniform(0.0, 5.0)) - 2.0;  // {-2..2}
        c.phase = rng.uniform(0.0, kTwoPi);
        comps.push_back(c);
        amp_sum += c.amp;
    }
    return scaled_sum_field(comps, amp_sum, lam0, Lam0, RegClass::zygmund, tg, grid);
}

CoefficientField holder_field(double theta, int J, std::uint64_t seed, RoughAxis axis,
                              double lam0, double Lam0, const TimeGrid& tg,
                              const PeriodicGrid& grid) {
    require(theta > 0.0 && theta < 1.0, "holder_field: theta must lie in (0,1)");
    require(J >= 1, "holder_field: J must be >= 1");
    check_resolution(axis, J, tg, grid);
    Rng rng = substream(seed, "hoelder");
    std::vector<CosineComponent> comps;
    double amp_sum = 0.0;
    for (int j = 1; j <= J; ++j) {
        CosineComponent c;
        c.amp = std::pow(2.0, -theta * j);
        c.phase = rng.uniform(0.0, kTwoPi);
        rough_frequencies(axis, j, rng, &c.pt, &c.qx);
        comps.push_back(c);
        amp_sum += c.amp;
    }
    return scaled_sum_field(comps, amp_sum, lam0, Lam0, RegClass::hoelder, tg, grid);
}

namespace {

// Evaluate a time column extended by even reflection, linear interpolation.
double reflected_interp(const double* col, std::size_t stride, const TimeGrid& tg,
                        double t) {
    const double L = tg.T - tg.t0;
    double tau = std::fmod(t - tg.t0, 2.0 * L);
    if (tau < 0.0) tau += 2.0 * L;
    if (tau > L) tau = 2.0 * L - tau;
    double pos = tau / tg.dt();
    int i0 = static_cast<int>(std::floor(pos));
    if (i0 > tg.nt - 2) i0 = tg.nt - 2;
    if (i0 < 0) i0 = 0;
    const double frac = pos - i0;
    return (1.0 - frac) * col[static_cast<std::size_t>(i0) * stride] +
           frac * col[(static_cast<std::size_t>(i0) + 1) * stride];
}

}  // namespace

CoefficientField mollify_time(const CoefficientField& a, double eps,
                              const MollifierKernel& ker) {
    require(eps > 0.0 && eps <= 1.0, "mollify_time: eps must lie in (0,1]");
    require(eps >= 8.0 * a.tg.dt(), "mollify_time: eps under-resolved by the time grid");
    CoefficientField out;
    out.tg = a.tg;
    out.grid = a.grid;
    out.cls = RegClass::lipschitz;
    out.lam0 = a.lam0;
    out.Lam0 = a.Lam0;
    const std::size_t g = a.grid.size();
    const std::size_t total = static_cast<std::size_t>(a.tg.nt) * g;
    out.values.resize(total);
    out.dt_values.resize(total);
    out.dtt_values.resize(total);
    const std::size_t nq = ker.nodes.size();
    parallel_for(g, [&](std::size_t m) {
        const double* col = a.values.data() + m;
        for (int it = 0; it < a.tg.nt; ++it) {
            const double t = a.tg.time(it);
            double v = 0.0, dv = 0.0, ddv = 0.0;
            for (std::size_t q = 0; q < nq; ++q) {
                const double s = reflected_interp(col, g, a.tg, t - eps * ker.nodes[q]);
                v += ker.w_rho[q] * s;
                dv += ker.w_drho[q] * s;
                ddv += ker.w_ddrho[q] * s;
            }
            const std::size_t idx = static_cast<std::size_t>(it) * g + m;
            out.values[idx] = v;
            out.dt_values[idx] = dv / eps;
            out.dtt_values[idx] = ddv / (eps * eps);
        }
    });
    return out;
}

MollificationReport mollification_report(const CoefficientField& a,
                                         const std::vector<double>& ladder,
                                         const MollifierKernel& ker) {
    require(!ladder.empty(), "mollification_report: empty width ladder");
    for (double e : ladder)
        require(e > 0.0 && e <= 1.0, "mollification_report: width outside (0,1]");
    MollificationReport rep;
    double scale = 1.0;
    for (double v : a.values) scale = std::max(scale, std::abs(v));
    for (double eps : ladder) {
        const CoefficientField m = mollify_time(a, eps, ker);
        MollificationRow row;
        row.eps = eps;
        row.min_val = m.values[0];
        row.max_val = m.values[0];
        for (std::size_t i = 0; i < m.values.size(); ++i) {
            row.sup_diff = std::max(row.sup_diff, std::abs(m.values[i] - a.values[i]));
            row.sup_dt = std::max(row.sup_dt, std::abs(m.dt_values[i]));
            row.sup_dtt = std::max(row.sup_dtt, std::abs(m.dtt_values[i]));
            row.min_val = std::min(row.min_val, m.values[i]);
            row.max_val = std::max(row.max_val, m.values[i]);
        }
        rep.rows.push_back(row);
    }
    rep.min_val = rep.rows[0].min_val;
    rep.max_val = rep.rows[0].max_val;
    for (const auto& r : rep.rows) {
        rep.min_val = std::min(rep.min_val, r.min_val);
        rep.max_val = std::max(rep.max_val, r.max_val);
    }
    double worst_diff = 0.0;
    for (const auto& r : rep.rows) worst_diff = std::max(worst_diff, r.sup_diff);
    if (worst_diff <= 1e-13 * scale) {
        rep.degenerate_zero = true;
        return rep;
    }
    if (rep.rows.size() < 2) return rep;
    std::vector<double> log_eps, log_inv, diff_log, dtt_log, dt_lin, dt_log, dt_norm_log;
    for (const auto& r : rep.rows) {
        log_eps.push_back(std::log(r.eps));
        log_inv.push_back(std::log(1.0 / r.eps));
        diff_log.push_back(std::log(std::max(r.sup_diff, 1e-300)));
        dtt_log.push_back(std::log(std::max(r.sup_dtt, 1e-300)));
        dt_lin.push_back(r.sup_dt);
        dt_log.push_back(std::log(std::max(r.sup_dt, 1e-300)));
        dt_norm_log.push_back(std::log(std::max(r.sup_dt, 1e-300) /
                                       std::log(2.0 + 1.0 / r.eps)));
    }
    rep.slope_diff = linfit(log_eps, diff_log).slope;
    rep.slope_dtt = linfit(log_eps, dtt_log).slope;
    double dt_mean = 0.0;
    for (double v : dt_lin) dt_mean += v;
    dt_mean /= dt_lin.size();
    const LinFit af = linfit(log_inv, dt_lin);
    rep.dt_affine_slope = af.slope;
    rep.dt_affine_resid_rel = dt_mean > 0.0 ? af.rms_resid / dt_mean : 0.0;
    const LinFit pf = linfit(log_inv, dt_log);
    rep.dt_power_exponent_raw = pf.slope;
    double ss = 0.0;
    for (std::size_t i = 0; i < dt_lin.size(); ++i) {
        const double pred = std::exp(pf.slope * log_inv[i] + pf.intercept);
        ss += (dt_lin[i] - pred) * (dt_lin[i] - pred);
    }
    rep.dt_power_resid_rel =
        dt_mean > 0.0 ? std::sqrt(ss / dt_lin.size()) / dt_mean : 0.0;
    rep.dt_power_exponent_normalized = linfit(log_inv, dt_norm_log).slope;
    return rep;
}

namespace {

std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t cap) {
    std::vector<std::size_t> idx;
    const std::size_t step = n <= cap ? 1 : (n + cap - 1) / cap;
    for (std::size_t i = 0; i < n; i += step) idx.push_back(i);
    return idx;
}

}  // namespace

double zygmund_seminorm_t(const CoefficientField& a) {
    double best = 0.0;
    for (std::size_t m : subsample_indices(a.grid.size(), 64))
        best = std::max(best, zygmund_seminorm(a.space_column(m), a.tg.dt(), false));
    return best;
}

double zygmund_seminorm_x(const CoefficientField& a) {
    double best = 0.0;
    for (std::size_t it : subsample_indices(static_cast<std::size_t>(a.tg.nt), 64))
        best = std::max(best, zygmund_seminorm(a.time_slice(static_cast<int>(it)),
                                               a.grid.dx(), true));
    return best;
}

double lipschitz_constant_t(const CoefficientField& a) {
    const std::size_t g = a.grid.size();
    double best = 0.0;
    for (int it = 0; it + 1 < a.tg.nt; ++it)
        for (std::size_t m = 0; m < g; ++m)
            best = std::max(best, std::abs(a.at(it + 1, m) - a.at(it, m)));
    return best / a.tg.dt();
}

double lipschitz_constant_x(const CoefficientField& a) {
    const std::size_t g = a.grid.size();
    require(a.grid.dim == 1, "lipschitz_constant_x: dim 1 only");
    double best = 0.0;
    for (int it = 0; it < a.tg.nt; ++it)
        for (std::size_t m = 0; m < g; ++m)
            best = std::max(best, std::abs(a.at(it, (m + 1) % g) - a.at(it, m)));
    return best / a.grid.dx();
}

double spacetime_zygmund_seminorm(const CoefficientField& a) {
    require(a.grid.dim == 1, "spacetime_zygmund_seminorm: dim 1 only");
    const std::size_t g = a.grid.size();
    const double dt = a.tg.dt(), dx = a.grid.dx();
    // Geometric ladder of shift steps per axis; isotropic |zeta| < 1.
    std::vector<int> tsteps{0}, xsteps{0};
    for (int s = 1; s * dt < 1.0 && s < a.tg.nt; s *= 2) tsteps.push_back(s);
    for (int s = 1; s * dx < 1.0 && s < static_cast<int>(g) / 2; s *= 2)
        xsteps.push_back(s);
    double best = 0.0;
    for (int i : tsteps) {
        for (int j : xsteps) {
            if (i == 0 && j == 0) continue;
            const double zeta = std::hypot(i * dt, j * dx);
            if (zeta >= 1.0) continue;
            double sup = 0.0;
            for (int it = i; it + i < a.tg.nt; ++it) {
                const std::size_t base = static_cast<std::size_t>(it) * g;
                const std::size_t up = base + static_cast<std::size_t>(i) * g;
                const std::size_t dn = base - static_cast<std::size_t>(i) * g;
                for (std::size_t m = 0; m < g; ++m) {
                    const std::size_t mp = (m + static_cast<std::size_t>(j)) % g;
                    const std::size_t mm = (m + g - static_cast<std::size_t>(j)) % g;
                    const double d = a.values[up + mp] + a.values[dn + mm] -
                                     2.0 * a.values[base + m];
                    sup = std::max(sup, std::abs(d));
                }
            }
            best = std::max(best, sup / zeta);
        }
    }
    return best;
}

std::vector<double> coefficient_profile(const CoefficientField& a, double t,
                                        int deriv) {
    require(deriv >= 0 && deriv <= 2, "coefficient_profile: deriv in {0,1,2}");
    const std::size_t n = a.grid.size();
    std::vector<double> row(n);
    if (a.has_generator) {
        for (std::size_t m = 0; m < n; ++m) {
            const auto x = a.grid.coord(m);
            row[m] = deriv == 0   ? a.gen.eval(t, x)
                     : deriv == 1 ? a.gen.eval_dt(t, x)
                                  : a.gen.eval_dtt(t, x);
        }
        return row;
    }
    const std::vector<double>* tab = &a.values;
    if (deriv == 1) {
        require(!a.dt_values.empty(),
                "coefficient_profile: time derivative unavailable for sampled field");
        tab = &a.dt_values;
    } else if (deriv == 2) {
        require(!a.dtt_values.empty(),
                "coefficient_profile: second time derivative unavailable for sampled field");
        tab = &a.dtt_values;
    }
    double pos = (t - a.tg.t0) / a.tg.dt();
    pos = std::max(0.0, std::min(pos, static_cast<double>(a.tg.nt - 1)));
    int i0 = static_cast<int>(std::floor(pos));
    if (i0 > a.tg.nt - 2) i0 = a.tg.nt - 2;
    if (i0 < 0) i0 = 0;
    const double frac = pos - i0;
    const double* lo = tab->data() + static_cast<std::size_t>(i0) * n;
    for (std::size_t m = 0; m < n; ++m)
        row[m] = (1.0 - frac) * lo[m] + frac * lo[m + n];
    return row;
}

}  // namespace zyg
