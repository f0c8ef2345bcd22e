#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zygwave/config.hpp"
#include "zygwave/csvio.hpp"
#include "zygwave/fieldio.hpp"
#include "zygwave/grid.hpp"
#include "zygwave/rng.hpp"
#include "zygwave/suites.hpp"
#include "zygwave/threadpool.hpp"

using namespace zyg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("field files round-trip bit-exactly") {
    const fs::path dir = fs::path("out") / "test-io";
    fs::create_directories(dir);
    const std::string path = (dir / "f.zygf").string();

    const PeriodicGrid g = make_grid(32, 1);
    Rng rng(substream_seed(99, "fieldio"));
    const ScalarField u = random_white_field(g, rng);
    write_field(path, u);
    const ScalarField v = read_field(path);
    CHECK(v.grid() == g);
    for (std::size_t m = 0; m < g.size(); ++m) {
        CHECK(v.samples()[m].real() == u.samples()[m].real());
        CHECK(v.samples()[m].imag() == u.samples()[m].imag());
    }

    // Writing the same field twice yields identical bytes.
    const std::string path2 = (dir / "f2.zygf").string();
    write_field(path2, u);
    CHECK(slurp(path) == slurp(path2));

    // Header layout: magic, version 1, n, dim, dtype 0 (little-endian u32).
    const std::string bytes = slurp(path);
    REQUIRE(bytes.size() == 20 + 16 * g.size());
    CHECK(bytes.substr(0, 4) == "ZYGF");
    CHECK(static_cast<unsigned char>(bytes[4]) == 1);
    CHECK(static_cast<unsigned char>(bytes[8]) == 32);
    CHECK(static_cast<unsigned char>(bytes[12]) == 1);
    CHECK(static_cast<unsigned char>(bytes[16]) == 0);

    const PeriodicGrid g2 = make_grid(16, 2);
    Rng rng2(substream_seed(99, "fieldio-2d"));
    const ScalarField u2 = random_white_field(g2, rng2);
    const std::string path3 = (dir / "f3.zygf").string();
    write_field(path3, u2);
    const ScalarField v2 = read_field(path3);
    CHECK(v2.grid() == g2);
    bool all_equal = true;
    for (std::size_t m = 0; m < g2.size(); ++m)
        all_equal = all_equal && v2.samples()[m] == u2.samples()[m];
    CHECK(all_equal);

    // Corrupted magic and truncated payload are rejected.
    std::string bad = bytes;
    bad[0] = 'X';
    const std::string badpath = (dir / "bad.zygf").string();
    {
        std::ofstream os(badpath, std::ios::binary | std::ios::trunc);
        os.write(bad.data(), static_cast<std::streamsize>(bad.size()));
    }
    CHECK_THROWS_AS(read_field(badpath), precondition_error);
    {
        std::ofstream os(badpath, std::ios::binary | std::ios::trunc);
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 8));
    }
    CHECK_THROWS_AS(read_field(badpath), precondition_error);
    CHECK_THROWS_AS(read_field((dir / "missing.zygf").string()), precondition_error);
}

TEST_CASE("g17 formatting and csv emission") {
    for (const double v : {0.1, 1.0 / 3.0, 3.141592653589793, 1e-17,
                           12345.678901234567, -0.0, 2.0}) {
        const std::string s = fmt_g17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    const fs::path dir = fs::path("out") / "test-io";
    fs::create_directories(dir);
    const std::string path = (dir / "t.csv").string();
    write_csv(path, {"a", "b"}, {{1.5, 0.1}});
    CHECK(slurp(path) == "a,b\n1.5,0.10000000000000001\n");
    CHECK_THROWS_AS(write_csv(path, {"a", "b"}, {{1.0}}), precondition_error);
}

TEST_CASE("config parsing: defaults, overrides, strictness") {
    const ExperimentConfig c = parse_config_text(R"({"experiment":"lp-suite"})");
    CHECK(c.experiment == "lp-suite");
    CHECK(c.seed == 20260816ULL);
    CHECK(c.n == 256);
    CHECK(c.dim == 1);
    CHECK(c.T == 1.0);
    CHECK(c.family == "weierstrass");
    CHECK(c.J == 6);
    CHECK(c.axis == "tx");
    CHECK(c.sigma == 0.0);
    CHECK(c.resolved_out() == "out/lp-suite");

    const ExperimentConfig f = parse_config_text(R"({
        "experiment": "noloss-main",
        "seed": 7,
        "out": "elsewhere/run1",
        "grid": {"n": 512},
        "time": {"T": 2.0},
        "coefficient": {"family": "smooth-x", "J": 5, "axis": "x",
                         "lam0": 0.25, "Lam0": 2.0},
        "data": {"kmax": 30, "s": 0.5},
        "sigma": 1.0,
        "tolerances": {"noloss.acrossJ": 3.0}
    })");
    CHECK(f.seed == 7);
    CHECK(f.resolved_out() == "elsewhere/run1");
    CHECK(f.n == 512);
    CHECK(f.T == 2.0);
    CHECK(f.family == "smooth-x");
    CHECK(f.J == 5);
    CHECK(f.lam0 == 0.25);
    CHECK(f.data_kmax == 30);
    CHECK(f.sigma == 1.0);
    CHECK(f.tol("noloss.acrossJ", 2.0) == 3.0);
    CHECK(f.tol("not-set", 0.125) == 0.125);

    CHECK(suite_names().size() == 9);

    CHECK_THROWS_AS(parse_config_text("not json"), config_error);
    CHECK_THROWS_AS(parse_config_text("[1,2]"), config_error);
    CHECK_THROWS_AS(parse_config_text(R"({"experiment":"nope"})"), config_error);
    CHECK_THROWS_AS(parse_config_text(R"({})"), config_error);
    CHECK_THROWS_AS(
        parse_config_text(R"({"experiment":"lp-suite","bogus":1})"), config_error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"experiment":"lp-suite","grid":{"m":4}})"),
                    config_error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"experiment":"lp-suite","grid":{"n":100}})"),
                    config_error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"experiment":"lp-suite","time":{"T":0}})"),
                    config_error);
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"experiment":"lp-suite","coefficient":{"family":"foo"}})"),
        config_error);
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"experiment":"lp-suite","coefficient":{"axis":"y"}})"),
        config_error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"experiment":"lp-suite","sigma":-0.5})"),
                    config_error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"experiment":"lp-suite","data":{"kmax":0}})"),
                    config_error);
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"experiment":"lp-suite","tolerances":{"x":"y"}})"),
        config_error);
    CHECK_THROWS_AS(parse_config_text(R"({"experiment":"lp-suite","seed":-3})"),
                    config_error);

    // load_config_file round-trip and missing-file error.
    const fs::path dir = fs::path("out") / "test-io";
    fs::create_directories(dir);
    const std::string cfgpath = (dir / "c.json").string();
    {
        std::ofstream os(cfgpath);
        os << R"({"experiment":"norms-suite","grid":{"n":64},"data":{"kmax":20}})";
    }
    const ExperimentConfig lc = load_config_file(cfgpath);
    CHECK(lc.experiment == "norms-suite");
    CHECK(lc.n == 64);
    CHECK_THROWS_AS(load_config_file((dir / "nope.json").string()), config_error);
}

TEST_CASE("suite artifacts are byte-deterministic and thread-independent" *
          doctest::timeout(300)) {
    ExperimentConfig cfg;
    cfg.experiment = "norms-suite";
    cfg.n = 64;

    cfg.out_dir = "out/test-det/a";
    const SuiteResult ra = run_suite(cfg);
    cfg.out_dir = "out/test-det/b";
    const SuiteResult rb = run_suite(cfg);
    CHECK(ra.pass() == rb.pass());
    CHECK(slurp("out/test-det/a/report.txt") == slurp("out/test-det/b/report.txt"));
    CHECK(slurp("out/test-det/a/norms_equivalence.csv") ==
          slurp("out/test-det/b/norms_equivalence.csv"));

    set_thread_count(4);
    cfg.out_dir = "out/test-det/c";
    run_suite(cfg);
    set_thread_count(1);
    CHECK(slurp("out/test-det/a/report.txt") == slurp("out/test-det/c/report.txt"));
    CHECK(slurp("out/test-det/a/norms_equivalence.csv") ==
          slurp("out/test-det/c/norms_equivalence.csv"));

    ExperimentConfig bad;
    bad.experiment = "not-a-suite";
    bad.out_dir = "out/test-det/x";
    CHECK_THROWS_AS(run_suite(bad), config_error);
}
