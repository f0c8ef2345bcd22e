#include <doctest.h>

#include <cmath>
#include <vector>

#include "zygwave/coeffs.hpp"
#include "zygwave/grid.hpp"
#include "zygwave/rng.hpp"

using namespace zyg;

namespace {

// Constant-in-x sampled field from a scalar function of t (no generator).
CoefficientField sampled_from(const TimeGrid& tg, const PeriodicGrid& g,
                              double (*f)(double)) {
    CoefficientField a;
    a.tg = tg;
    a.grid = g;
    a.values.resize(std::size_t(tg.nt) * g.size());
    for (int it = 0; it < tg.nt; ++it)
        for (std::size_t m = 0; m < g.size(); ++m)
            a.values[std::size_t(it) * g.size() + m] = f(tg.time(it));
    a.lam0 = 0.1;
    a.Lam0 = 10.0;
    return a;
}

double f_const(double) { return 1.3; }
double f_linear(double t) { return 0.7 + 0.5 * t; }
double f_kink(double t) { return std::abs(t - 0.5); }

}  // namespace

TEST_CASE("mollifier kernel is a unit even bump") {
    const MollifierKernel ker = make_mollifier();
    double mass = 0.0;
    for (const double w : ker.w_rho) mass += w;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ker.chat(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ker.chat(3.0) == doctest::Approx(ker.chat(-3.0)).epsilon(1e-14));
    CHECK(std::abs(ker.chat(200.0)) < 1e-3);
    CHECK(ker.moment_abs() > 0.0);
    CHECK(ker.moment_abs() < 1.0);
    CHECK_THROWS_AS(make_mollifier(4), precondition_error);
}

TEST_CASE("mollification is exact on constants and linear functions") {
    const PeriodicGrid g = make_grid(16, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 2049);
    const MollifierKernel ker = make_mollifier();

    const CoefficientField c = sampled_from(tg, g, f_const);
    const CoefficientField cm = mollify_time(c, 0.1, ker);
    const CoefficientField l = sampled_from(tg, g, f_linear);
    const CoefficientField lm = mollify_time(l, 0.1, ker);
    for (int it = 0; it < tg.nt; ++it) {
        const double t = tg.time(it);
        CHECK(std::abs(cm.at(it, 0) - 1.3) < 1e-11);
        CHECK(std::abs(cm.dt_values[std::size_t(it) * g.size()]) < 1e-8);
        if (t >= 0.1 && t <= 0.9) {
            // Even kernel + linear integrand: interior values are exact and
            // the differentiated kernel reproduces the slope.
            CHECK(std::abs(lm.at(it, 0) - f_linear(t)) < 1e-10);
            CHECK(std::abs(lm.dt_values[std::size_t(it) * g.size()] - 0.5) < 1e-7);
            CHECK(std::abs(lm.dtt_values[std::size_t(it) * g.size()]) < 1e-5);
        }
    }

    // Width preconditions.
    CHECK_THROWS_AS(mollify_time(c, 0.0, ker), precondition_error);
    CHECK_THROWS_AS(mollify_time(c, 1.5, ker), precondition_error);
    const TimeGrid coarse = make_time_grid(0.0, 1.0, 17);
    CHECK_THROWS_AS(mollify_time(sampled_from(coarse, g, f_const), 0.1, ker),
                    precondition_error);
}

TEST_CASE("mollifying a kink leaves the first-moment signature") {
    const PeriodicGrid g = make_grid(16, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 4097);
    const MollifierKernel ker = make_mollifier();
    const CoefficientField a = sampled_from(tg, g, f_kink);
    const double eps = 0.125;
    const CoefficientField am = mollify_time(a, eps, ker);
    const int imid = (tg.nt - 1) / 2;  // t = 1/2, the kink
    // a_eps(1/2) = integral rho(s) |eps s| ds = eps * moment_abs.
    CHECK(am.at(imid, 0) ==
          doctest::Approx(eps * ker.moment_abs()).epsilon(1e-4));
}

TEST_CASE("weierstrass field: ellipticity, resolution guard, generator") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 513);
    const CoefficientField a =
        weierstrass_zygmund(4, 77, RoughAxis::tx, 0.5, 1.5, tg, g);
    CHECK(a.has_generator);
    double lo = 1e300, hi = -1e300;
    for (const double v : a.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= 0.5 - 1e-12);
    CHECK(hi <= 1.5 + 1e-12);

    // Sampled table matches the generator at the lattice points.
    for (const int it : {0, 100, 512})
        for (const std::size_t m : {std::size_t(0), std::size_t(13)})
            CHECK(a.at(it, m) ==
                  doctest::Approx(a.gen.eval(tg.time(it), g.coord(m)))
                      .epsilon(1e-14));

    // Spatial roughness 2^J must stay under n/2.
    CHECK_THROWS_AS(weierstrass_zygmund(8, 77, RoughAxis::x, 0.5, 1.5, tg, g),
                    precondition_error);
    // Same seed gives the same generator on a finer grid.
    const PeriodicGrid g2 = make_grid(128, 1);
    const CoefficientField b =
        weierstrass_zygmund(4, 77, RoughAxis::tx, 0.5, 1.5, tg, g2);
    CHECK(b.gen.comps.size() == a.gen.comps.size());
    for (std::size_t i = 0; i < a.gen.comps.size(); ++i) {
        CHECK(b.gen.comps[i].amp == a.gen.comps[i].amp);
        CHECK(b.gen.comps[i].pt == a.gen.comps[i].pt);
        CHECK(b.gen.comps[i].qx == a.gen.comps[i].qx);
        CHECK(b.gen.comps[i].phase == a.gen.comps[i].phase);
    }
}

TEST_CASE("generator time derivatives match finite differences") {
    const PeriodicGrid g = make_grid(32, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 257);
    const CoefficientField a =
        weierstrass_zygmund(3, 5, RoughAxis::tx, 0.5, 1.5, tg, g);
    const std::array<double, 2> x = g.coord(7);
    const double t = 0.4321, h = 1e-5;
    const double fd1 = (a.gen.eval(t + h, x) - a.gen.eval(t - h, x)) / (2 * h);
    const double fd2 =
        (a.gen.eval(t + h, x) - 2 * a.gen.eval(t, x) + a.gen.eval(t - h, x)) /
        (h * h);
    CHECK(a.gen.eval_dt(t, x) == doctest::Approx(fd1).epsilon(1e-6));
    CHECK(a.gen.eval_dtt(t, x) == doctest::Approx(fd2).epsilon(1e-4));
}

TEST_CASE("closed-form mollification equals quadrature in the interior") {
    const PeriodicGrid g = make_grid(16, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 2049);
    const MollifierKernel ker = make_mollifier();
    const CoefficientField a =
        weierstrass_zygmund(4, 13, RoughAxis::t, 0.5, 1.5, tg, g);
    const double eps = 0.25;
    const CoefficientField am = mollify_time(a, eps, ker);
    const CoefficientGenerator gm = a.gen.mollified(eps, ker);
    double worst = 0.0;
    for (int it = 0; it < tg.nt; ++it) {
        const double t = tg.time(it);
        if (t < eps || t > 1.0 - eps) continue;
        worst = std::max(worst, std::abs(am.at(it, 0) - gm.eval(t, g.coord(0))));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("coefficient_profile: generator route and interpolation route") {
    const PeriodicGrid g = make_grid(32, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 129);
    const CoefficientField a =
        weierstrass_zygmund(3, 21, RoughAxis::tx, 0.5, 1.5, tg, g);
    const double t = 0.333;  // off the time lattice
    const std::vector<double> prof = coefficient_profile(a, t, 0);
    const std::vector<double> dprof = coefficient_profile(a, t, 1);
    for (std::size_t m = 0; m < g.size(); ++m) {
        CHECK(prof[m] == doctest::Approx(a.gen.eval(t, g.coord(m))).epsilon(1e-14));
        CHECK(dprof[m] ==
              doctest::Approx(a.gen.eval_dt(t, g.coord(m))).epsilon(1e-14));
    }

    // Sampled-only field: deriv 0 interpolates, deriv 1 needs tables.
    CoefficientField s = a;
    s.has_generator = false;
    const int it = 50;
    const double tm = 0.5 * (tg.time(it) + tg.time(it + 1));
    const std::vector<double> mid = coefficient_profile(s, tm, 0);
    for (const std::size_t m : {std::size_t(0), std::size_t(9)})
        CHECK(mid[m] ==
              doctest::Approx(0.5 * (s.at(it, m) + s.at(it + 1, m))).epsilon(1e-13));
    CHECK_THROWS_AS(coefficient_profile(s, tm, 1), precondition_error);
}

TEST_CASE("mollification report separates zygmund from hoelder") {
    const PeriodicGrid g = make_grid(16, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 4097);
    const MollifierKernel ker = make_mollifier();
    const std::vector<double> ladder = {0.25, 0.125, 0.0625, 0.03125};
    const CoefficientField w =
        weierstrass_zygmund(8, 3, RoughAxis::t, 0.5, 1.5, tg, g);
    const CoefficientField h =
        holder_field(0.4, 8, 3, RoughAxis::t, 0.5, 1.5, tg, g);
    const MollificationReport wr = mollification_report(w, ladder, ker);
    const MollificationReport hr = mollification_report(h, ladder, ker);
    CHECK(wr.slope_diff > 0.7);
    CHECK(wr.slope_diff < 1.3);
    CHECK(hr.slope_diff < wr.slope_diff);
    CHECK(wr.min_val >= 0.5 - 1e-9);
    CHECK(wr.max_val <= 1.5 + 1e-9);
    CHECK_THROWS_AS(mollification_report(w, {}, ker), precondition_error);
}

TEST_CASE("regularity functionals distinguish the classes") {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 2049);
    const CoefficientField w =
        weierstrass_zygmund(9, 4, RoughAxis::t, 0.5, 1.5, tg, g);
    const CoefficientField c = constant_coefficient(1.0, tg, g);
    CHECK(zygmund_seminorm_t(w) > 0.01);
    CHECK(zygmund_seminorm_t(w) < 50.0);
    CHECK(zygmund_seminorm_t(c) == 0.0);
    // The defining gap of the class: the Lipschitz constant keeps growing as
    // scales are added, so the deep sum is far from Lipschitz.
    const CoefficientField w3 =
        weierstrass_zygmund(3, 4, RoughAxis::t, 0.5, 1.5, tg, g);
    CHECK(lipschitz_constant_t(w) > 1.8 * lipschitz_constant_t(w3));
}
