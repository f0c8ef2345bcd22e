#pragma once

// Periodic grids and spectral scalar fields.
//
// The spatial domain is the torus [0,2*pi)^dim sampled on n points per axis
// (n a power of two, dim 1 or 2). A ScalarField carries both its samples and
// its spectrum, kept consistent from construction, so diagonal (Fourier
// multiplier) operators never pay a transform round trip.
//
// The lattice mode k = -n/2 (Nyquist) has no conjugate partner; every
// operator in this artifact zeroes it on output.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "zygwave/common.hpp"
#include "zygwave/fft.hpp"
#include "zygwave/rng.hpp"

namespace zyg {

struct PeriodicGrid {
    int n = 0;    // points per axis, power of two, >= 16
    int dim = 1;  // 1 or 2

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }

    double dx() const { return kTwoPi / n; }

    // Per-axis integer frequency of linear index m (FFTW storage order).
    std::array<int, 2> freq(std::size_t m) const {
        std::array<int, 2> k{0, 0};
        if (dim == 1) {
            const int i = static_cast<int>(m);
            k[0] = i < n / 2 ? i : i - n;
        } else {
            const int row = static_cast<int>(m) / n;  // first axis
            const int col = static_cast<int>(m) % n;  // second axis
            k[0] = row < n / 2 ? row : row - n;
            k[1] = col < n / 2 ? col : col - n;
        }
        return k;
    }

    double freq_abs(std::size_t m) const {
        const auto k = freq(m);
        return dim == 1 ? std::abs(static_cast<double>(k[0]))
                        : std::hypot(static_cast<double>(k[0]), static_cast<double>(k[1]));
    }

    bool is_nyquist(std::size_t m) const {
        if (dim == 1) return static_cast<int>(m) == n / 2;
        return (static_cast<int>(m) / n == n / 2) || (static_cast<int>(m) % n == n / 2);
    }

    // Coordinates of sample point with linear index m.
    std::array<double, 2> coord(std::size_t m) const {
        std::array<double, 2> x{0.0, 0.0};
        if (dim == 1) {
            x[0] = dx() * static_cast<double>(m);
        } else {
            x[0] = dx() * static_cast<double>(static_cast<int>(m) / n);
            x[1] = dx() * static_cast<double>(static_cast<int>(m) % n);
        }
        return x;
    }

    bool operator==(const PeriodicGrid& o) const { return n == o.n && dim == o.dim; }
};

// Validates and constructs. n must be a power of two >= 16; dim in {1,2}.
PeriodicGrid make_grid(int n, int dim);

// Lambda(k, gamma) = (gamma^2 + |k|^2)^(1/2); gamma >= 1 required.
double lambda_weight(const std::array<int, 2>& k, int dim, double gamma);
double lambda_weight_abs(double kabs, double gamma);

class ScalarField {
  public:
    ScalarField() = default;

    static ScalarField from_samples(const PeriodicGrid& g, std::vector<cplx> samples);
    static ScalarField from_spectrum(const PeriodicGrid& g, std::vector<cplx> spectrum);
    static ScalarField zero(const PeriodicGrid& g);

    const PeriodicGrid& grid() const { return grid_; }
    const std::vector<cplx>& samples() const { return samples_; }
    const std::vector<cplx>& spectrum() const { return spectrum_; }

    // l2: sqrt(sum_k |uhat_k|^2), the discrete mean-square norm.
    double l2() const;
    double linf() const;

    // <u,v> = sum_k uhat_k * conj(vhat_k); equals the mean of u*conj(v) over
    // samples by the discrete Parseval identity.
    cplx inner(const ScalarField& v) const;

    ScalarField operator+(const ScalarField& v) const;
    ScalarField operator-(const ScalarField& v) const;
    ScalarField scaled(cplx c) const;

    // Diagonal operator uhat_k -> w(k) uhat_k; Nyquist zeroed on output.
    ScalarField multiplier(const std::function<double(const std::array<int, 2>&)>& w) const;
    ScalarField multiplier_cplx(const std::function<cplx(const std::array<int, 2>&)>& w) const;

    // d/dx_axis, spectral.
    ScalarField derivative(int axis) const;

    double grad_l2() const;

    // Zero every mode with any axis frequency above cut (and Nyquist).
    ScalarField truncated(int cut) const;

  private:
    PeriodicGrid grid_;
    std::vector<cplx> samples_;
    std::vector<cplx> spectrum_;
};

// Pointwise product of samples (no dealiasing); Nyquist zeroed.
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);
ScalarField pointwise_product(const std::vector<double>& a, const ScalarField& b);

// 2/3-rule cut for products on this grid.
int dealias_cut(const PeriodicGrid& g);

// Random fields (deterministic given the rng state).
// White: independent complex normal on every non-Nyquist mode.
ScalarField random_white_field(const PeriodicGrid& g, Rng& rng);
// Modes limited to |k_axis| <= kmax.
ScalarField random_bandlimited_field(const PeriodicGrid& g, int kmax, Rng& rng);
// Spectral profile |uhat_k| ~ w(|k|) with random phases, w supplied.
ScalarField random_profile_field(const PeriodicGrid& g, int kmax,
                                 const std::function<double(double)>& w, Rng& rng);
// Same, but draws are consumed in increasing physical frequency order
// (k = -kmax..kmax, dim 1 only), so one seed denotes one continuum field
// independent of the grid resolution it is embedded into.
ScalarField random_profile_field_resolution_stable(const PeriodicGrid& g, int kmax,
                                                   const std::function<double(double)>& w,
                                                   Rng& rng);

}  // namespace zyg
