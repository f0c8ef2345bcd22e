#include <doctest.h>

#include <cmath>
#include <vector>

#include "zygwave/coeffs.hpp"
#include "zygwave/fft.hpp"
#include "zygwave/grid.hpp"
#include "zygwave/symbols.hpp"

using namespace zyg;

namespace {

// Storage index of signed frequency k on an n-grid.
std::size_t idx_of(int k, int n) { return std::size_t(k < 0 ? k + n : k); }

}  // namespace

TEST_CASE("admissible cutoff: plateau, support, telescoping to one") {
    const PeriodicGrid g = make_grid(256, 1);
    for (const double gamma : {1.0, 8.0, 64.0}) {
        const AdmissibleCutoff psi = build_cutoff(gamma, g);
        CHECK(psi.mu >= 0);
        CHECK(psi.eps1 > 0.0);
        CHECK(psi.eps2 < 1.0);
        CHECK(psi.eps1 <= psi.eps2);
        for (const double xi : {0.0, 3.0, 17.0, 100.0}) {
            // psi(0, xi) = 1 exactly: the lowpass telescopes to one.
            CHECK(std::abs(psi.psi(0.0, xi) - 1.0) < 1e-15);
            // Inside the measured plateau the value stays 1 (up to 1e-12).
            const double eta_in = 0.5 * psi.eps1 * (gamma + xi);
            CHECK(psi.psi(eta_in, xi) >= 1.0 - 1e-9);
            // Beyond half the modulation radius the cutoff has died.
            CHECK(psi.psi(0.55 * (gamma + xi), xi) == 0.0);
        }
    }
}

TEST_CASE("multiplier and lambda-power symbols") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    const double gamma = 2.0;
    const Symbol lam = lambda_power_symbol(g, tg, gamma, 1.0);
    CHECK(lam.x_independent);
    CHECK(lam.smoothed);
    CHECK(lam.order == 1.0);
    const auto sl = lam.slice(0.3);
    for (const int k : {0, 1, 5, -7, 31}) {
        const double want = std::sqrt(gamma * gamma + double(k) * double(k));
        // Column k, spatial row 0 (x-independent: all rows equal).
        const cplx got = sl->v[idx_of(k, g.n) * g.size() + 0];
        CHECK(std::abs(got - cplx(want)) < 1e-14);
        CHECK(sl->v[idx_of(k, g.n) * g.size() + 17] == got);
    }
    // Time derivative of a static multiplier is zero.
    const Symbol dlam = symbol_time_derivative(lam, 1);
    const auto dsl = dlam.slice(0.3);
    for (const cplx& z : dsl->v) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("alpha for a constant coefficient is exact and x-independent") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    const MollifierKernel ker = make_mollifier();
    const double gamma = 2.0, c = 1.3;
    const CoefficientField a = constant_coefficient(c, tg, g);
    const Symbol alpha = build_alpha(a, gamma, ker, EpsLinkage::banded);
    CHECK(alpha.x_independent);
    CHECK(alpha.smoothed);
    CHECK(alpha.order == 2.0);
    const auto sl = alpha.slice(0.5);
    for (const int k : {0, 3, 10, -20})
        CHECK(std::abs(sl->v[idx_of(k, g.n) * g.size()] -
                       cplx(c * k * k + gamma * gamma)) < 1e-10);

    // Ellipticity is required.
    const CoefficientField bad = constant_coefficient(-1.0, tg, g);
    CHECK_THROWS_AS(build_alpha(bad, gamma, ker, EpsLinkage::banded),
                    precondition_error);
    CHECK_THROWS_AS(build_alpha(a, 0.5, ker, EpsLinkage::banded),
                    precondition_error);
}

TEST_CASE("alpha-tilde matches the raw coefficient pointwise") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 257);
    const double gamma = 1.0;
    const CoefficientField a =
        weierstrass_zygmund(4, 8, RoughAxis::tx, 0.5, 1.5, tg, g);
    const Symbol at = build_alpha_tilde(a, gamma);
    const double t = tg.time(100);
    const auto sl = at.slice(t);
    for (const int k : {1, 7, -9})
        for (const std::size_t m : {std::size_t(0), std::size_t(33)}) {
            const double want = a.at(100, m) * k * k + gamma * gamma;
            CHECK(std::abs(sl->v[idx_of(k, g.n) * g.size() + m] - cplx(want)) <
                  1e-10);
        }
}

TEST_CASE("symbol powers, products, conjugation") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    const MollifierKernel ker = make_mollifier();
    const CoefficientField a =
        weierstrass_zygmund(3, 5, RoughAxis::tx, 0.5, 1.5, tg, g);
    const Symbol alpha = build_alpha(a, 1.0, ker, EpsLinkage::banded);
    const Symbol half = symbol_power(alpha, 0.5);
    CHECK(half.order == doctest::Approx(1.0));
    const auto sa = alpha.slice(0.25);
    const auto sh = half.slice(0.25);
    for (std::size_t i = 0; i < sa->v.size(); i += 101)
        CHECK(std::abs(sh->v[i] - std::sqrt(sa->v[i].real())) < 1e-12);

    const Symbol prod = symbol_product(half, half);
    const auto sp = prod.slice(0.25);
    for (std::size_t i = 0; i < sa->v.size(); i += 101)
        CHECK(std::abs(sp->v[i] - sa->v[i]) < 1e-10 * (1.0 + std::abs(sa->v[i])));
    CHECK(prod.order == doctest::Approx(2.0));

    // Powers require positive values.
    const std::vector<double> neg(g.size(), -1.0);
    const Symbol s = static_profile_symbol(g, tg, 1.0, neg);
    const Symbol sneg = symbol_power(s, 0.5);
    CHECK_THROWS_AS(sneg.slice(0.0), precondition_error);

    // Conjugation is pointwise.
    const Symbol cj = symbol_conj(half);
    const auto sc = cj.slice(0.25);
    for (std::size_t i = 0; i < sc->v.size(); i += 211)
        CHECK(sc->v[i] == std::conj(sh->v[i]));
}

TEST_CASE("symbol time derivative matches finite differences") {
    const PeriodicGrid g = make_grid(32, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 257);
    const MollifierKernel ker = make_mollifier();
    const CoefficientField a =
        weierstrass_zygmund(3, 6, RoughAxis::tx, 0.5, 1.5, tg, g);
    const Symbol alpha = build_alpha(a, 1.0, ker, EpsLinkage::banded);
    const Symbol q = symbol_power(alpha, 0.25);
    const Symbol dq = symbol_time_derivative(q, 1);
    const double t = 0.4375, h = 1e-5;
    const auto sm = q.slice(t - h);
    const auto sp = q.slice(t + h);
    const auto sd = dq.slice(t);
    for (std::size_t i = 0; i < sd->v.size(); i += 173) {
        const double fd = (sp->v[i].real() - sm->v[i].real()) / (2 * h);
        CHECK(sd->v[i].real() == doctest::Approx(fd).epsilon(5e-5));
    }
    // Total derivative order is capped at two.
    const Symbol ddq = symbol_time_derivative(dq, 2);
    CHECK_THROWS_AS(ddq.slice(t), precondition_error);
}

TEST_CASE("xi and x derivatives") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    // d/dxi of the linear multiplier xi is 1 (centered differences).
    const Symbol lin = multiplier_symbol(g, tg, 1.0, 1.0,
                                         [](double k) { return k; });
    const Symbol dlin = symbol_xi_derivative(lin);
    const auto sd = dlin.slice(0.0);
    for (const int k : {0, 4, -5, 20})
        CHECK(std::abs(sd->v[idx_of(k, g.n) * g.size()] - cplx(1.0)) < 1e-12);

    // d/dx of a static cos(x) profile is -sin(x).
    std::vector<double> prof(g.size());
    for (int j = 0; j < g.n; ++j) prof[j] = std::cos(kTwoPi * j / g.n);
    const Symbol cs = static_profile_symbol(g, tg, 1.0, prof);
    const Symbol dcs = symbol_x_derivative(cs);
    const auto sx = dcs.slice(0.0);
    for (const int j : {0, 7, 31})
        CHECK(std::abs(sx->v[0 * g.size() + j] -
                       cplx(-std::sin(kTwoPi * j / g.n))) < 1e-12);
}

TEST_CASE("smoothing confines the x-spectrum per column") {
    const PeriodicGrid g = make_grid(128, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 129);
    const CoefficientField a =
        weierstrass_zygmund(5, 9, RoughAxis::x, 0.5, 1.5, tg, g);
    const AdmissibleCutoff psi = build_cutoff(1.0, g);
    const Symbol raw = coefficient_symbol(a, 1.0);
    CHECK(!raw.smoothed);
    const Symbol sm = smooth_symbol(raw, psi);
    CHECK(sm.smoothed);
    CHECK_THROWS_AS(smooth_symbol(sm, psi), precondition_error);

    // For each xi-column, x-modes at |eta| >= (gamma+|xi|)/2 must vanish.
    const auto sl = sm.slice(0.5);
    std::vector<cplx> col(g.size());
    for (const int k : {2, 11, -30}) {
        for (std::size_t m = 0; m < g.size(); ++m)
            col[m] = sl->v[idx_of(k, g.n) * g.size() + m];
        fft_analyze(g.n, 1, col.data(), col.data());
        for (std::size_t m = 0; m < g.size(); ++m) {
            const double eta = std::abs(double(g.freq(m)[0]));
            if (eta >= 0.55 * (1.0 + std::abs(double(k))))
                CHECK(std::abs(col[m]) < 1e-13);
        }
    }
}

TEST_CASE("smoothed-flag algebra") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    const MollifierKernel ker = make_mollifier();
    const CoefficientField c = constant_coefficient(2.0, tg, g);
    const CoefficientField w =
        weierstrass_zygmund(3, 2, RoughAxis::x, 0.5, 1.5, tg, g);
    const Symbol lam = lambda_power_symbol(g, tg, 1.0, 0.5);  // x-independent
    const AdmissibleCutoff psi = build_cutoff(1.0, g);
    const Symbol rough = coefficient_symbol(w, 1.0);
    const Symbol srough = smooth_symbol(rough, psi);

    CHECK(symbol_product(lam, srough).smoothed);       // multiplier x smoothed
    CHECK(!symbol_product(srough, srough).smoothed);   // smoothed x smoothed
    CHECK(symbol_power(lam, 2.0).smoothed);            // power of multiplier
    CHECK(!symbol_power(srough, 2.0).smoothed);        // power loses support
    CHECK(symbol_time_derivative(srough, 1).smoothed); // d/dt commutes
    CHECK(symbol_conj(srough).smoothed);
    CHECK(!symbol_x_derivative(srough).x_independent);
    const Symbol alpha_c = build_alpha(c, 1.0, ker, EpsLinkage::banded);
    CHECK(alpha_c.x_independent);  // constants stay multipliers
}

TEST_CASE("symbol seminorm and band index") {
    const PeriodicGrid g = make_grid(128, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    const Symbol lam = lambda_power_symbol(g, tg, 1.0, 1.0);
    const double s0 = symbol_seminorm(lam, 1.0, 0.0, 1);
    CHECK(s0 >= 0.5);
    CHECK(s0 <= 1.5);
    CHECK_THROWS_AS(symbol_seminorm(lam, 1.0, 0.0, 3), precondition_error);

    CHECK(lambda_band(0.0, 1.0) == 0);
    CHECK(lambda_band(2.0, 1.0) == 1);   // sqrt(5) in [2,4)
    CHECK(lambda_band(3.0, 1.0) == 1);   // sqrt(10) in [2,4)
    CHECK(lambda_band(60.0, 1.0) == 5);  // ~60 in [32,64)
}

TEST_CASE("slice cache returns shared results") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    const Symbol lam = lambda_power_symbol(g, tg, 1.0, 0.5);
    const auto s1 = lam.slice(0.25);
    const auto s2 = lam.slice(0.25);
    CHECK(s1.get() == s2.get());
    const auto s3 = lam.slice(0.5);
    CHECK(s1.get() != s3.get());
}
