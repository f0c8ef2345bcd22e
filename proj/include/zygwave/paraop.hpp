#pragma once

// Quantization of smoothed symbols and the operator-level diagnostics:
// measured operator order, composition/adjoint remainders, the lower-bound
// (positivity) search in the spectral parameter gamma, and the elliptic
// norm-equivalence check.
//
// Quantization (one space dimension):
//     (T_a u)(x_j) = sum_k sigma(x_j, k) uhat_k e^{i k x_j},
// the sum skipping the Nyquist mode, and the output projected off Nyquist.
// The adjoint is the exact conjugate-transpose of that finite matrix:
//     (T_a^* v)^(k) = (1/n) sum_j conj(sigma(x_j, k)) v(x_j) e^{-i k x_j}.
// Symbols must be smoothed (or x-independent), which is what confines the
// output of band-localized inputs to neighboring bands.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "zygwave/symbols.hpp"

namespace zyg {

class ParaOp {
  public:
    ParaOp() = default;
    explicit ParaOp(Symbol s) : sym_(std::move(s)) {}

    const Symbol& symbol() const { return sym_; }
    bool is_adjoint() const { return adj_; }

    ScalarField apply(const ScalarField& u, double t) const;
    ParaOp adjoint() const {
        ParaOp p = *this;
        p.adj_ = !adj_;
        return p;
    }

  private:
    Symbol sym_;
    bool adj_ = false;
};

// errors: symbol not smoothed, grid not one-dimensional.
ParaOp quantize(const Symbol& a);

// Smooth if (and only if) the symbol does not already satisfy the spectral
// support property.
Symbol ensure_smoothed(const Symbol& a, const AdmissibleCutoff& psi);

// A named time-dependent linear operator on fields (used by the remainder
// and order-measurement diagnostics).
struct LinearOp {
    std::string name;
    std::function<ScalarField(const ScalarField&, double)> fn;

    ScalarField apply(const ScalarField& u, double t) const { return fn(u, t); }
};

LinearOp op_of(const ParaOp& p, std::string name);

// R(u) = T_a T_b u - T_{ab} u + i T_{d_xi a . d_x b} u; expected order
// m_a + m_b - 2 (two-term symbolic calculus), against the naive m_a + m_b - 1
// of the uncorrected difference.
LinearOp composition_remainder(const Symbol& a, const Symbol& b,
                               const AdmissibleCutoff& psi);

// First-corrected difference without the correction term (order m_a+m_b-1),
// the comparison operator for the composition gain.
LinearOp composition_remainder_naive(const Symbol& a, const Symbol& b,
                                     const AdmissibleCutoff& psi);

// R(u) = T_a^* u - T_{conj a} u + i T_{d_xi d_x conj a} u; expected order
// m_a - 2, against m_a - 1 uncorrected.
LinearOp adjoint_remainder(const Symbol& a, const AdmissibleCutoff& psi);
LinearOp adjoint_remainder_naive(const Symbol& a, const AdmissibleCutoff& psi);

struct OrderFit {
    double m_hat = 0.0;      // fitted polynomial order
    double delta_hat = 0.0;  // fitted logarithmic order
    double c_hat = 0.0;
    double rms_resid = 0.0;
    std::vector<double> band_log_ratio;  // mean log(|Pu|/|u|) per band
};

// Fit log(|P u_j| / |u_j|) ~ m_hat * (j log 2) + delta_hat * log(1+j) + c
// over random fields localized to gamma-bands j = jlo..jhi.
// pre: at least 4 bands, trials >= 1, 2^{jhi+1} resolvable on the grid.
OrderFit operator_order_fit(const LinearOp& op, const PeriodicGrid& g, double gamma,
                            int jlo, int jhi, int trials, std::uint64_t seed,
                            double t);

struct PositivityResult {
    bool found = false;
    double gamma_star = 0.0;
    double lambda_min = 0.0;  // spectral lower bound of the symmetrized,
                              // order-normalized operator at gamma_star
    std::vector<std::pair<double, double>> trace;  // (gamma, lambda_min(gamma))
};

// Doubling search gamma = 1, 2, 4, ..., 2^10 for the smallest gamma at which
//     Lambda^{-m/2} sym(T(gamma)) Lambda^{-m/2} >= accept_threshold,
// measured by random Rayleigh quotients refined with power iteration on the
// reflected operator. family(gamma) must produce the quantizable symbol for
// that gamma. Exhausting the search is reported, not fatal.
PositivityResult positivity_gamma_search(const std::function<Symbol(double)>& family,
                                         double m, double accept_threshold,
                                         const PeriodicGrid& g, int trials,
                                         std::uint64_t seed, double t);

struct EquivalenceReport {
    double c_lo = 0.0;  // min |T u| / |u|_{H^m_gamma} over trials
    double c_hi = 0.0;  // max
};

// Two-sided elliptic norm equivalence |T_a u| ~ |u|_{H^m_gamma} on random
// fields (white, restricted off the top band to avoid edge truncation).
EquivalenceReport garding_equivalence_check(const ParaOp& op, double m, double gamma,
                                            int trials, std::uint64_t seed, double t);

}  // namespace zyg
