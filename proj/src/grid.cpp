#include "zygwave/grid.hpp"

#include <algorithm>

namespace zyg {

PeriodicGrid make_grid(int n, int dim) {
    require(n >= 16, "make_grid: n must be >= 16");
    require((n & (n - 1)) == 0, "make_grid: n must be a power of two");
    require(dim == 1 || dim == 2, "make_grid: dim must be 1 or 2");
    return PeriodicGrid{n, dim};
}

double lambda_weight_abs(double kabs, double gamma) {
    require(gamma >= 1.0, "lambda_weight: gamma must be >= 1");
    return std::hypot(gamma, kabs);
}

double lambda_weight(const std::array<int, 2>& k, int dim, double gamma) {
    const double kabs = dim == 1 ? std::abs(static_cast<double>(k[0]))
                                 : std::hypot(static_cast<double>(k[0]),
                                              static_cast<double>(k[1]));
    return lambda_weight_abs(kabs, gamma);
}

ScalarField ScalarField::from_samples(const PeriodicGrid& g, std::vector<cplx> samples) {
    require(samples.size() == g.size(), "ScalarField: sample count mismatch");
    ScalarField f;
    f.grid_ = g;
    f.samples_ = std::move(samples);
    f.spectrum_.resize(f.samples_.size());
    fft_analyze(g.n, g.dim, f.samples_.data(), f.spectrum_.data());
    return f;
}

ScalarField ScalarField::from_spectrum(const PeriodicGrid& g, std::vector<cplx> spectrum) {
    require(spectrum.size() == g.size(), "ScalarField: spectrum size mismatch");
    ScalarField f;
    f.grid_ = g;
    f.spectrum_ = std::move(spectrum);
    f.samples_.resize(f.spectrum_.size());
    fft_synthesize(g.n, g.dim, f.spectrum_.data(), f.samples_.data());
    return f;
}

ScalarField ScalarField::zero(const PeriodicGrid& g) {
    ScalarField f;
    f.grid_ = g;
    f.samples_.assign(g.size(), cplx{0.0, 0.0});
    f.spectrum_.assign(g.size(), cplx{0.0, 0.0});
    return f;
}

double ScalarField::l2() const {
    double s = 0.0;
    for (const cplx& c : spectrum_) s += std::norm(c);
    return std::sqrt(s);
}

double ScalarField::linf() const {
    double s = 0.0;
    for (const cplx& c : samples_) s = std::max(s, std::abs(c));
    return s;
}

cplx ScalarField::inner(const ScalarField& v) const {
    require(grid_ == v.grid_, "inner: grid mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < spectrum_.size(); ++i)
        s += spectrum_[i] * std::conj(v.spectrum_[i]);
    return s;
}

ScalarField ScalarField::operator+(const ScalarField& v) const {
    require(grid_ == v.grid_, "field +: grid mismatch");
    std::vector<cplx> spec(spectrum_);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] += v.spectrum_[i];
    return from_spectrum(grid_, std::move(spec));
}

ScalarField ScalarField::operator-(const ScalarField& v) const {
    require(grid_ == v.grid_, "field -: grid mismatch");
    std::vector<cplx> spec(spectrum_);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] -= v.spectrum_[i];
    return from_spectrum(grid_, std::move(spec));
}

ScalarField ScalarField::scaled(cplx c) const {
    std::vector<cplx> spec(spectrum_);
    for (auto& z : spec) z *= c;
    return from_spectrum(grid_, std::move(spec));
}

ScalarField ScalarField::multiplier(
    const std::function<double(const std::array<int, 2>&)>& w) const {
    std::vector<cplx> spec(spectrum_.size());
    for (std::size_t m = 0; m < spec.size(); ++m) {
        spec[m] = grid_.is_nyquist(m) ? cplx{0.0, 0.0} : spectrum_[m] * w(grid_.freq(m));
    }
    return from_spectrum(grid_, std::move(spec));
}

ScalarField ScalarField::multiplier_cplx(
    const std::function<cplx(const std::array<int, 2>&)>& w) const {
    std::vector<cplx> spec(spectrum_.size());
    for (std::size_t m = 0; m < spec.size(); ++m) {
        spec[m] = grid_.is_nyquist(m) ? cplx{0.0, 0.0} : spectrum_[m] * w(grid_.freq(m));
    }
    return from_spectrum(grid_, std::move(spec));
}

ScalarField ScalarField::derivative(int axis) const {
    require(axis >= 0 && axis < grid_.dim, "derivative: axis out of range");
    return multiplier_cplx([axis](const std::array<int, 2>& k) {
        return cplx{0.0, static_cast<double>(k[axis])};
    });
}

double ScalarField::grad_l2() const {
    double s = 0.0;
    for (std::size_t m = 0; m < spectrum_.size(); ++m) {
        if (grid_.is_nyquist(m)) continue;
        const double kabs = grid_.freq_abs(m);
        s += kabs * kabs * std::norm(spectrum_[m]);
    }
    return std::sqrt(s);
}

ScalarField ScalarField::truncated(int cut) const {
    std::vector<cplx> spec(spectrum_.size());
    for (std::size_t m = 0; m < spec.size(); ++m) {
        const auto k = grid_.freq(m);
        const bool keep = !grid_.is_nyquist(m) && std::abs(k[0]) <= cut &&
                          (grid_.dim < 2 || std::abs(k[1]) <= cut);
        spec[m] = keep ? spectrum_[m] : cplx{0.0, 0.0};
    }
    return from_spectrum(grid_, std::move(spec));
}

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
    require(a.grid() == b.grid(), "pointwise_product: grid mismatch");
    std::vector<cplx> s(a.samples());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= b.samples()[i];
    ScalarField f = ScalarField::from_samples(a.grid(), std::move(s));
    // Zero the Nyquist content the product may have created.
    std::vector<cplx> spec(f.spectrum());
    for (std::size_t m = 0; m < spec.size(); ++m)
        if (a.grid().is_nyquist(m)) spec[m] = cplx{0.0, 0.0};
    return ScalarField::from_spectrum(a.grid(), std::move(spec));
}

ScalarField pointwise_product(const std::vector<double>& a, const ScalarField& b) {
    require(a.size() == b.grid().size(), "pointwise_product: size mismatch");
    std::vector<cplx> s(b.samples());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= a[i];
    ScalarField f = ScalarField::from_samples(b.grid(), std::move(s));
    std::vector<cplx> spec(f.spectrum());
    for (std::size_t m = 0; m < spec.size(); ++m)
        if (b.grid().is_nyquist(m)) spec[m] = cplx{0.0, 0.0};
    return ScalarField::from_spectrum(b.grid(), std::move(spec));
}

int dealias_cut(const PeriodicGrid& g) { return g.n / 3; }

ScalarField random_white_field(const PeriodicGrid& g, Rng& rng) {
    std::vector<cplx> spec(g.size());
    for (std::size_t m = 0; m < spec.size(); ++m)
        spec[m] = g.is_nyquist(m) ? cplx{0.0, 0.0} : rng.normal_cplx();
    return ScalarField::from_spectrum(g, std::move(spec));
}

ScalarField random_bandlimited_field(const PeriodicGrid& g, int kmax, Rng& rng) {
    std::vector<cplx> spec(g.size(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < spec.size(); ++m) {
        if (g.is_nyquist(m)) continue;
        const auto k = g.freq(m);
        if (std::abs(k[0]) > kmax || (g.dim == 2 && std::abs(k[1]) > kmax)) continue;
        spec[m] = rng.normal_cplx();
    }
    return ScalarField::from_spectrum(g, std::move(spec));
}

ScalarField random_profile_field(const PeriodicGrid& g, int kmax,
                                 const std::function<double(double)>& w, Rng& rng) {
    std::vector<cplx> spec(g.size(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < spec.size(); ++m) {
        if (g.is_nyquist(m)) continue;
        const double kabs = g.freq_abs(m);
        if (kabs > kmax) continue;
        spec[m] = rng.normal_cplx() * w(kabs);
    }
    return ScalarField::from_spectrum(g, std::move(spec));
}

ScalarField random_profile_field_resolution_stable(const PeriodicGrid& g, int kmax,
                                                   const std::function<double(double)>& w,
                                                   Rng& rng) {
    require(g.dim == 1, "resolution-stable profile field: dim 1 only");
    require(kmax < g.n / 2, "resolution-stable profile field: kmax beyond grid");
    std::vector<cplx> spec(g.size(), cplx{0.0, 0.0});
    for (int k = -kmax; k <= kmax; ++k) {
        const cplx draw = rng.normal_cplx();
        const std::size_t m = static_cast<std::size_t>(k >= 0 ? k : k + g.n);
        spec[m] = draw * w(std::abs(static_cast<double>(k)));
    }
    return ScalarField::from_spectrum(g, std::move(spec));
}

}  // namespace zyg
