#pragma once

// Parameter-dependent symbols a(t, x, xi; gamma), their smoothing by an
// admissible cutoff, seminorms, and the second-order wave symbols.
//
// A symbol is held lazily: evaluating it at a time t (and time-derivative
// order 0, 1 or 2) produces a Slice — the table of values over the full
// (xi, x) lattice, stored xi-major so each xi-column is contiguous in x
// (that is the layout the batched x-FFT smoothing and the quantization
// inner loops want). Slices are cached per (t, deriv) with a small
// eviction window, so the several operators sharing one symbol at one
// time instant pay for the evaluation once.
//
// The admissible cutoff psi(eta, xi) equals 1 for |eta| <= eps1(gamma+|xi|)
// and 0 for |eta| >= eps2(gamma+|xi|); smoothing multiplies each xi-column's
// x-spectrum by psi(., xi). psi(0, xi) = 1 exactly, so x-independent symbols
// are untouched and constants quantize to constant multiples of the identity.
//
// The second-order symbol is
//     alpha(t,x,xi) = a_eps(t,x) xi^2 + gamma^2,
// with the mollification width linked to frequency band-wise:
// eps = 2^{-j} on the dyadic band Lambda(xi,gamma) in [2^j, 2^{j+1}).
// Generator-backed coefficients admit a closed-form mollification (each
// cosine component is scaled by the kernel's cosine transform), which keeps
// per-stage evaluation exact and cheap; sampled-only coefficients fall back
// to quadrature tables and inherit the time-resolution requirement.

#include <functional>
#include <memory>
#include <vector>

#include "zygwave/coeffs.hpp"
#include "zygwave/cutoff.hpp"
#include "zygwave/grid.hpp"

namespace zyg {

struct Slice {
    int nxi = 0;  // frequency lattice size (= n, FFTW storage order)
    int nx = 0;   // space points (= n)
    std::vector<cplx> v;  // v[xi*nx + ix]

    cplx& at(int xi, int ix) { return v[static_cast<std::size_t>(xi) * nx + ix]; }
    const cplx& at(int xi, int ix) const {
        return v[static_cast<std::size_t>(xi) * nx + ix];
    }
};

class SymbolImpl {
  public:
    virtual ~SymbolImpl() = default;
    // Slice of the deriv-th time derivative at time t, cached.
    std::shared_ptr<const Slice> slice(const PeriodicGrid& g, double t, int deriv) const;

  protected:
    virtual Slice compute(const PeriodicGrid& g, double t, int deriv) const = 0;

  private:
    struct CacheEnt {
        double t = 0.0;
        int deriv = -1;
        std::uint64_t stamp = 0;
        std::shared_ptr<const Slice> s;
    };
    mutable std::vector<CacheEnt> cache_;
    mutable std::uint64_t stamp_ = 0;
};

// Admissible smoothing cutoff. mu >= 0; the x-spectral transition of the
// base term sits at scale 2^{mu-3} (mu = 0 is the natural choice at
// gamma = 1; larger gamma forces a wider plateau, hence larger mu).
struct AdmissibleCutoff {
    int mu = 0;
    double gamma = 1.0;
    double eps1 = 0.0;  // plateau ratio: psi = 1 for |eta| <= eps1(gamma+|xi|)
    double eps2 = 1.0;  // support ratio: psi = 0 for |eta| >= eps2(gamma+|xi|)
    int kmax = 0;       // top dyadic block of the xi partition
    RadialCutoff base;

    double psi(double eta_abs, double xi_abs) const;
};

// Smallest mu whose plateau covers |eta| <= gamma/8 for every lattice xi and
// whose support stays inside |eta| < (gamma+|xi|)/2; eps1/eps2 are measured
// on the lattice. pre: gamma >= 1, grid n >= 32.
AdmissibleCutoff build_cutoff(double gamma, const PeriodicGrid& g,
                              CutoffBridge bridge = CutoffBridge::exponential);

struct Symbol {
    std::shared_ptr<SymbolImpl> impl;
    PeriodicGrid grid;
    TimeGrid tg;             // time window the symbol is defined on
    double order = 0.0;      // m: growth (gamma+|xi|)^m
    double log_order = 0.0;  // delta: additional log^delta(1+gamma+|xi|)
    double gamma = 1.0;
    bool smoothed = false;       // x-spectrum confined per column (or x-free)
    bool x_independent = false;  // pure Fourier multiplier

    std::shared_ptr<const Slice> slice(double t, int deriv = 0) const {
        return impl->slice(grid, t, deriv);
    }
};

// Pure multiplier symbol g(xi) (value from the signed lattice frequency).
Symbol multiplier_symbol(const PeriodicGrid& g, const TimeGrid& tg, double gamma,
                         double order, const std::function<double(double)>& fn);
// Lambda(xi,gamma)^s.
Symbol lambda_power_symbol(const PeriodicGrid& g, const TimeGrid& tg, double gamma,
                           double s);
// xi-independent symbol a(t,x) from a coefficient field (order 0).
Symbol coefficient_symbol(const CoefficientField& a, double gamma);
// xi- and t-independent profile a(x).
Symbol static_profile_symbol(const PeriodicGrid& g, const TimeGrid& tg, double gamma,
                             const std::vector<double>& profile);

enum class EpsLinkage { banded, fixed };

// alpha = a_eps xi^2 + gamma^2 with the band-wise eps = 2^{-j} linkage
// (or one fixed eps for diagnostics). Order 2. pre: a elliptic (lam0 > 0).
Symbol build_alpha(const CoefficientField& a, double gamma, const MollifierKernel& ker,
                   EpsLinkage linkage, double fixed_eps = 0.0);

// Same without time mollification: alpha_tilde = a xi^2 + gamma^2.
Symbol build_alpha_tilde(const CoefficientField& a, double gamma);

// Pointwise power a^p; order p*m. errors: non-positive symbol values.
Symbol symbol_power(const Symbol& a, double p);

// d/dt or d2/dt2 of the symbol values. errors: order outside {1,2}.
Symbol symbol_time_derivative(const Symbol& a, int order);

// Centered-difference d/dxi (lattice spacing 1); order m-1.
Symbol symbol_xi_derivative(const Symbol& a);

// Spectral d/dx per xi-column (acts on the smoothed symbol). Order m.
Symbol symbol_x_derivative(const Symbol& a);

// Pointwise product; orders and log-orders add.
Symbol symbol_product(const Symbol& a, const Symbol& b);

// Complex conjugate of the symbol values.
Symbol symbol_conj(const Symbol& a);

// Multiply each xi-column's x-spectrum by psi(., xi). pre: a unsmoothed
// (products of smoothed symbols lose the support property and are
// deliberately re-smoothed before quantization).
Symbol smooth_symbol(const Symbol& a, const AdmissibleCutoff& psi);

// sup over the lattice (t subsampled) of
// (gamma+|xi|)^{-m+k'} log^{-delta}(1+gamma+|xi|) |d^k'/dxi^k' a|, k' <= k.
// errors: k > 2.
double symbol_seminorm(const Symbol& a, double m, double delta, int k);

// Smallest K with |a(t+tau,x+y,xi)+a(t-tau,x-y,xi)-2a(t,x,xi)| bounded by
// K (tau+|y|) (gamma+|xi|)^m log^delta(1+gamma+|xi|) over sampled shifts.
double symbol_zygmund_constant(const Symbol& a, double m, double delta);

// Band index j with Lambda(xi,gamma) in [2^j, 2^{j+1}).
int lambda_band(double xi_abs, double gamma);

}  // namespace zyg
