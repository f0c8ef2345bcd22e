// Acceptance harness: runs every experiment suite at its contract size plus a
// direct solver validation block, printing exactly one PASS/FAIL line per
// criterion.  Exit status is 0 iff all criteria pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "zygwave/coeffs.hpp"
#include "zygwave/config.hpp"
#include "zygwave/csvio.hpp"
#include "zygwave/grid.hpp"
#include "zygwave/rng.hpp"
#include "zygwave/solver.hpp"
#include "zygwave/suites.hpp"
#include "zygwave/threadpool.hpp"

using namespace zyg;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct CriterionLine {
    bool pass = false;
    std::string detail;
};

double check_value(const SuiteResult& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c.value;
    return std::nan("");
}

std::string gate_summary(const std::vector<SuiteResult>& rs) {
    int total = 0, passed = 0;
    std::string fails;
    for (const auto& r : rs)
        for (const auto& c : r.checks) {
            if (!c.gated) continue;
            ++total;
            if (c.pass)
                ++passed;
            else
                fails += (fails.empty() ? "" : ",") + r.suite + "/" + c.name;
        }
    std::string s = "gates " + std::to_string(passed) + "/" + std::to_string(total);
    if (!fails.empty()) s += " failed: " + fails;
    return s;
}

ExperimentConfig suite_config(const std::string& name, int n) {
    ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.n = n;
    cfg.out_dir = "out/acceptance/" + name;
    return cfg;
}

CriterionLine run_suites(const std::vector<std::pair<std::string, int>>& suites,
                         double budget,
                         const std::function<std::string(
                             const std::vector<SuiteResult>&)>& extra) {
    CriterionLine line;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SuiteResult> rs;
    try {
        for (const auto& [name, n] : suites) rs.push_back(run_suite(suite_config(name, n)));
    } catch (const std::exception& e) {
        line.pass = false;
        line.detail = std::string("exception: ") + e.what();
        return line;
    }
    const double el = seconds_since(t0);
    bool pass = el <= budget;
    for (const auto& r : rs) pass = pass && r.pass();
    line.pass = pass;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "; %.1fs<=%.0fs", el, budget);
    line.detail = gate_summary(rs) + (extra ? "; " + extra(rs) : "") + buf;
    return line;
}

ScalarField mode_field(const PeriodicGrid& g, int k, cplx amp) {
    std::vector<cplx> spec(g.size(), cplx(0.0));
    spec[std::size_t(k < 0 ? k + g.n : k)] = amp;
    return ScalarField::from_spectrum(g, spec);
}

ScalarField profile_data(const PeriodicGrid& g, std::uint64_t seed,
                         const char* label, int kmax, double decay) {
    Rng rng = substream(seed, label);
    return random_profile_field_resolution_stable(
        g, kmax, [decay](double k) { return std::pow(1.0 + k, -decay); }, rng);
}

// --- criterion 8: direct solver validation -------------------------------

struct SolverCheck {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool lower_is_pass = true;  // pass when value <= bound
    bool pass() const { return lower_is_pass ? value <= bound : value >= bound; }
};

SolverCheck dalembert_check() {
    const PeriodicGrid g = make_grid(256, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 129);
    const CoefficientField a = constant_coefficient(1.0, tg, g);
    std::vector<cplx> s(g.size());
    for (int j = 0; j < g.n; ++j) s[j] = std::cos(3.0 * (kTwoPi * j / g.n));
    CauchyProblem pb;
    pb.grid = g;
    pb.t0 = 0.0;
    pb.T = 0.5;
    pb.a = a;
    pb.u0 = ScalarField::from_samples(g, s);
    pb.u1 = ScalarField::zero(g);
    pb.dt_override = 1e-3;
    const Trajectory tr = solve(pb);
    const ScalarField want = pb.u0.scaled(std::cos(3.0 * tr.times.back()));
    return {"dalembert", (tr.u.back() - want).linf(), 1e-6};
}

SolverCheck rk4_order_check() {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 65);
    const CoefficientField a = constant_coefficient(1.0, tg, g);
    const int k = 3;
    const double om = 2.0;
    const auto forcing = [&](double t) {
        return mode_field(g, k, (double(k * k) - om * om) * std::cos(om * t));
    };
    std::vector<double> errs;
    for (const double dt : {4e-3, 2e-3, 1e-3}) {
        CauchyProblem pb;
        pb.grid = g;
        pb.t0 = 0.0;
        pb.T = 1.0;
        pb.a = a;
        pb.u0 = mode_field(g, k, 1.0);
        pb.u1 = ScalarField::zero(g);
        pb.forcing = forcing;
        pb.dt_override = dt;
        errs.push_back((solve(pb).u.back() -
                        mode_field(g, k, std::cos(om * 1.0)))
                           .l2());
    }
    const double order =
        0.5 * (std::log2(errs[0] / errs[1]) + std::log2(errs[1] / errs[2]));
    return {"rk4-order-dev", std::abs(order - 4.0), 0.3};
}

SolverCheck conservation_check() {
    const PeriodicGrid g = make_grid(128, 1);
    const TimeGrid tg = make_time_grid(0.0, 1.0, 257);
    const CoefficientField a =
        weierstrass_zygmund(3, 41, RoughAxis::x, 0.5, 1.5, tg, g);
    CauchyProblem pb;
    pb.grid = g;
    pb.t0 = 0.0;
    pb.T = 1.0;
    pb.a = a;
    pb.u0 = profile_data(g, 7, "cons-u0", 3, 0.5);
    pb.u1 = profile_data(g, 7, "cons-u1", 3, 0.5);
    pb.dt_override = 2e-3;
    const Trajectory tr = solve(pb);
    const std::vector<double> prof = coefficient_profile(a, 0.0, 0);
    const auto classical = [&](const ScalarField& u, const ScalarField& p) {
        const ScalarField du = u.derivative(0);
        const ScalarField adu = pointwise_product(prof, du);
        return p.l2() * p.l2() + adu.inner(du).real();
    };
    const double e0 = classical(tr.u[0], tr.p[0]);
    double drift = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        drift =
            std::max(drift, std::abs(classical(tr.u[i], tr.p[i]) - e0) / e0);
    return {"classical-drift", drift, 1e-4};
}

SolverCheck linearity_check() {
    const PeriodicGrid g = make_grid(64, 1);
    const TimeGrid tg = make_time_grid(0.0, 0.5, 257);
    const CoefficientField a =
        weierstrass_zygmund(4, 31, RoughAxis::tx, 0.5, 1.5, tg, g);
    const auto run = [&](const ScalarField& u0, const ScalarField& u1) {
        CauchyProblem pb;
        pb.grid = g;
        pb.t0 = 0.0;
        pb.T = 0.3;
        pb.a = a;
        pb.u0 = u0;
        pb.u1 = u1;
        return solve(pb);
    };
    const ScalarField a0 = profile_data(g, 5, "lin-a0", 10, 0.5);
    const ScalarField a1 = profile_data(g, 5, "lin-a1", 10, 0.5);
    const ScalarField b0 = profile_data(g, 5, "lin-b0", 10, 0.5);
    const ScalarField b1 = profile_data(g, 5, "lin-b1", 10, 0.5);
    const Trajectory ta = run(a0, a1);
    const Trajectory tb = run(b0, b1);
    const Trajectory tab = run(a0 + b0, a1 + b1);
    const double rel = (tab.u.back() - (ta.u.back() + tb.u.back())).l2() /
                       tab.u.back().l2();
    return {"linearity", rel, 1e-10};
}

SolverCheck reversibility_check() {
    const PeriodicGrid g = make_grid(64, 1);
    const double T = 0.5;
    const TimeGrid tg = make_time_grid(0.0, T, 257);
    const CoefficientField a =
        weierstrass_zygmund(4, 37, RoughAxis::tx, 0.5, 1.5, tg, g);
    CauchyProblem fwd;
    fwd.grid = g;
    fwd.t0 = 0.0;
    fwd.T = T;
    fwd.a = a;
    fwd.u0 = profile_data(g, 6, "rev-u0", 5, 1.0);
    fwd.u1 = profile_data(g, 6, "rev-u1", 5, 0.0);
    fwd.dt_override = 1e-3;
    const Trajectory tf = solve(fwd);
    CoefficientGenerator rgen = a.gen;
    for (auto& c : rgen.comps) {
        c.phase += c.pt * T;
        c.pt = -c.pt;
    }
    const CoefficientField ar =
        sample_generator(rgen, tg, g, a.cls, a.lam0, a.Lam0);
    CauchyProblem bwd = fwd;
    bwd.a = ar;
    bwd.u0 = tf.u.back();
    bwd.u1 = tf.p.back().scaled(-1.0);
    const Trajectory tb = solve(bwd);
    return {"reversibility", (tb.u.back() - fwd.u0).l2() / fwd.u0.l2(), 1e-6};
}

SolverCheck refinement_check() {
    std::vector<ScalarField> finals;
    const TimeGrid tg = make_time_grid(0.0, 1.0, 257);
    for (const int n : {256, 512}) {
        const PeriodicGrid g = make_grid(n, 1);
        const CoefficientField a =
            weierstrass_zygmund(3, 53, RoughAxis::tx, 0.5, 1.5, tg, g);
        CauchyProblem pb;
        pb.grid = g;
        pb.t0 = 0.0;
        pb.T = 1.0;
        pb.a = a;
        pb.u0 = profile_data(g, 8, "ref-u0", 5, 3.0);
        pb.u1 = profile_data(g, 8, "ref-u1", 5, 2.0);
        finals.push_back(solve(pb).u.back());
    }
    const int n_lo = 256;
    double num = 0.0, den = 0.0;
    for (int k = -n_lo / 2 + 1; k < n_lo / 2; ++k) {
        const std::size_t ml = std::size_t(k < 0 ? k + n_lo : k);
        const std::size_t mh = std::size_t(k < 0 ? k + 512 : k);
        num += std::norm(finals[1].spectrum()[mh] - finals[0].spectrum()[ml]);
        den += std::norm(finals[1].spectrum()[mh]);
    }
    return {"grid-refinement", std::sqrt(num / den), 0.10};
}

CriterionLine solver_validation() {
    CriterionLine line;
    const auto t0 = std::chrono::steady_clock::now();
    const double budget = 600.0;
    std::vector<SolverCheck> checks;
    try {
        checks.push_back(dalembert_check());
        checks.push_back(rk4_order_check());
        checks.push_back(conservation_check());
        checks.push_back(linearity_check());
        checks.push_back(reversibility_check());
        checks.push_back(refinement_check());
    } catch (const std::exception& e) {
        line.pass = false;
        line.detail = std::string("exception: ") + e.what();
        return line;
    }
    const double el = seconds_since(t0);
    bool pass = el <= budget;
    std::string det;
    for (const auto& c : checks) {
        pass = pass && c.pass();
        det += c.name + "=" + fmt_g17(c.value) + (c.lower_is_pass ? "<=" : ">=") +
               fmt_g17(c.bound) + (c.pass() ? " ok" : " FAIL") + "; ";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1fs<=%.0fs", el, budget);
    line.pass = pass;
    line.detail = det + buf;
    return line;
}

void print_line(int k, const std::string& name, const CriterionLine& line) {
    std::printf("CRITERION %d %s: %s (%s)\n", k, name.c_str(),
                line.pass ? "PASS" : "FAIL", line.detail.c_str());
    std::fflush(stdout);
}

std::string g17(double v) { return fmt_g17(v); }

}  // namespace

int main() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    set_thread_count(int(std::min(hw, 8u)));

    int failures = 0;
    const auto tally = [&](int k, const std::string& name,
                           const CriterionLine& line) {
        print_line(k, name, line);
        if (!line.pass) ++failures;
    };

    tally(1, "littlewood-paley",
          run_suites({{"lp-suite", 256}}, 30.0,
                     [](const std::vector<SuiteResult>& rs) {
                         return "bernstein-slope=" +
                                g17(check_value(rs[0], "bernstein-slope"));
                     }));

    tally(2, "norm-equivalence",
          run_suites({{"norms-suite", 256}}, 60.0,
                     [](const std::vector<SuiteResult>& rs) {
                         return "max-C=" +
                                g17(check_value(rs[0], "direct-vs-dyadic-max-C")) +
                                "<=4";
                     }));

    tally(3, "mollification-rates",
          run_suites({{"mollify-suite", 256}}, 60.0,
                     [](const std::vector<SuiteResult>& rs) {
                         return "diff-slope=" +
                                g17(check_value(rs[0], "zygmund-diff-slope")) +
                                " dtt-slope=" +
                                g17(check_value(rs[0], "zygmund-dtt-slope"));
                     }));

    tally(4, "remainder-order-gains",
          run_suites({{"symb-calc-suite", 256}, {"q-cancel-suite", 256}}, 300.0,
                     [](const std::vector<SuiteResult>& rs) {
                         return "comp-order=" +
                                g17(check_value(rs[0], "composition-remainder-order")) +
                                "<=0.7 adj-order=" +
                                g17(check_value(rs[0], "adjoint-remainder-order")) +
                                "<=0.2 q-order=" +
                                g17(check_value(rs[1], "cancellation-order")) +
                                "<=0.25 q-bad=" +
                                g17(check_value(rs[1], "miscancelled-order")) +
                                ">=0.75";
                     }));

    tally(5, "positivity-garding",
          run_suites({{"positivity-suite", 256}}, 300.0,
                     [](const std::vector<SuiteResult>& rs) {
                         return "lambda-min=" +
                                g17(check_value(rs[0], "plus-quarter-lambda-min")) +
                                ">=0.125 garding-spread=" +
                                g17(check_value(rs[0],
                                                "garding-equivalence-spread")) +
                                "<=20";
                     }));

    tally(6, "noloss-energy",
          run_suites({{"noloss-main", 1024}}, 600.0,
                     [](const std::vector<SuiteResult>& rs) {
                         const double s1 =
                             check_value(rs[0], "across-J-spread-n512");
                         const double s2 =
                             check_value(rs[0], "across-J-spread-n1024");
                         const double d1 =
                             check_value(rs[0], "across-n-deviation-J4");
                         const double d2 =
                             check_value(rs[0], "across-n-deviation-J6");
                         return "maxJspread=" + g17(std::max(s1, s2)) +
                                "<=2 maxNdev=" + g17(std::max(d1, d2)) + "<=0.1";
                     }));

    tally(7, "sigma-shift",
          run_suites({{"sigma-smooth", 512}}, 600.0,
                     [](const std::vector<SuiteResult>& rs) {
                         double worst = 0.0;
                         for (const auto& c : rs[0].checks)
                             if (c.gated && c.name.rfind("across-J-spread-", 0) == 0)
                                 worst = std::max(worst, c.value);
                         return "maxJspread=" + g17(worst) + "<=2";
                     }));

    tally(8, "solver-validation", solver_validation());

    std::printf("ACCEPTANCE: %d/8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
