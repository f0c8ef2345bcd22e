#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "zygwave/fft.hpp"
#include "zygwave/grid.hpp"
#include "zygwave/rng.hpp"
#include "zygwave/threadpool.hpp"

using namespace zyg;

TEST_CASE("rng determinism and substreams") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(substream_seed(7, "left") != substream_seed(7, "right"));
    CHECK(substream_seed(7, "left") == substream_seed(7, "left"));
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng d(2);
    double mean = 0.0;
    const int nn = 20000;
    for (int i = 0; i < nn; ++i) mean += d.normal();
    mean /= nn;
    CHECK(std::abs(mean) < 0.05);
}

TEST_CASE("fft roundtrip, pure mode, parseval") {
    const int n = 64;
    Rng rng(3);
    std::vector<cplx> u(n), v(n), w(n);
    for (auto& z : u) z = rng.normal_cplx();
    fft_analyze(n, 1, u.data(), v.data());
    fft_synthesize(n, 1, v.data(), w.data());
    for (int i = 0; i < n; ++i) CHECK(std::abs(w[i] - u[i]) < 1e-12);

    // e^{i3x} analyzes to a single unit coefficient at k=3.
    for (int j = 0; j < n; ++j) u[j] = std::polar(1.0, 3.0 * kTwoPi * j / n);
    fft_analyze(n, 1, u.data(), v.data());
    for (int m = 0; m < n; ++m)
        CHECK(std::abs(v[m] - (m == 3 ? cplx(1.0) : cplx(0.0))) < 1e-13);

    // Parseval with the 1/n analysis convention:
    // (1/n) sum |u_j|^2 = sum |uhat_k|^2.
    for (auto& z : u) z = rng.normal_cplx();
    fft_analyze(n, 1, u.data(), v.data());
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i) {
        lhs += std::norm(u[i]) / n;
        rhs += std::norm(v[i]);
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("grid construction and frequency map") {
    CHECK_THROWS_AS(make_grid(17, 1), precondition_error);
    CHECK_THROWS_AS(make_grid(8, 1), precondition_error);
    CHECK_THROWS_AS(make_grid(64, 3), precondition_error);
    const PeriodicGrid g = make_grid(16, 1);
    CHECK(g.freq(3)[0] == 3);
    CHECK(g.freq(9)[0] == -7);
    CHECK(g.is_nyquist(8));
    CHECK(g.dx() == doctest::Approx(kTwoPi / 16));
    CHECK(lambda_weight({3, 4}, 2, 1.0) ==
          doctest::Approx(5.0990195135927845).epsilon(1e-15));
    CHECK(lambda_weight_abs(3.0, 1.0) == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("scalar field calculus") {
    const PeriodicGrid g = make_grid(64, 1);
    std::vector<cplx> s(g.size());
    for (int j = 0; j < g.n; ++j) s[j] = std::polar(1.0, 3.0 * (kTwoPi * j / g.n));
    const ScalarField u = ScalarField::from_samples(g, s);
    const ScalarField du = u.derivative(0);
    // d/dx e^{i3x} = 3i e^{i3x}.
    const ScalarField ref = u.scaled(cplx(0.0, 3.0));
    CHECK((du - ref).l2() < 1e-12);
    CHECK(u.l2() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.grad_l2() == doctest::Approx(3.0).epsilon(1e-12));

    // Truncation removes everything above the cut.
    Rng rng(9);
    const ScalarField w = random_white_field(g, rng);
    const ScalarField wt = w.truncated(5);
    for (std::size_t m = 0; m < g.size(); ++m) {
        const int k = g.freq(m)[0];
        if (std::abs(k) > 5 || g.is_nyquist(m))
            CHECK(std::abs(wt.spectrum()[m]) == 0.0);
        else
            CHECK(wt.spectrum()[m] == w.spectrum()[m]);
    }

    // Pointwise product of pure modes adds frequencies.
    std::vector<cplx> s2(g.size()), s3(g.size());
    for (int j = 0; j < g.n; ++j) {
        s2[j] = std::polar(1.0, 2.0 * (kTwoPi * j / g.n));
        s3[j] = std::polar(1.0, 3.0 * (kTwoPi * j / g.n));
    }
    const ScalarField e2 = ScalarField::from_samples(g, s2);
    const ScalarField e3 = ScalarField::from_samples(g, s3);
    const ScalarField e5 = pointwise_product(e2, e3);
    for (std::size_t m = 0; m < g.size(); ++m)
        CHECK(std::abs(e5.spectrum()[m] - (g.freq(m)[0] == 5 ? cplx(1.0) : cplx(0.0))) <
              1e-13);
}

TEST_CASE("resolution-stable data is grid independent") {
    const auto w = [](double k) { return std::pow(1.0 + k, -1.0); };
    Rng r1(substream_seed(11, "data"));
    Rng r2(substream_seed(11, "data"));
    const PeriodicGrid g64 = make_grid(64, 1);
    const PeriodicGrid g128 = make_grid(128, 1);
    const ScalarField a = random_profile_field_resolution_stable(g64, 10, w, r1);
    const ScalarField b = random_profile_field_resolution_stable(g128, 10, w, r2);
    for (int k = -10; k <= 10; ++k) {
        const std::size_t ma = std::size_t(k < 0 ? k + 64 : k);
        const std::size_t mb = std::size_t(k < 0 ? k + 128 : k);
        CHECK(a.spectrum()[ma] == b.spectrum()[mb]);
    }
}

TEST_CASE("parallel_for matches serial and is thread-count independent") {
    const int n = 4096;
    std::vector<double> out1(n), out4(n);
    set_thread_count(1);
    parallel_for(std::size_t(n), [&](std::size_t i) {
        out1[i] = std::sin(0.001 * double(i));
    });
    set_thread_count(4);
    parallel_for(std::size_t(n), [&](std::size_t i) {
        out4[i] = std::sin(0.001 * double(i));
    });
    set_thread_count(1);
    CHECK(out1 == out4);
}
