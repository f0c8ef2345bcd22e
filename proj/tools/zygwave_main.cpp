// zygwave: run the experiment suites from a JSON config.
//
// Exit codes: 0 all gated checks pass; 1 a gated check failed (or the
// experiment itself broke down); 2 configuration or usage error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "zygwave/common.hpp"
#include "zygwave/config.hpp"
#include "zygwave/csvio.hpp"
#include "zygwave/suites.hpp"
#include "zygwave/threadpool.hpp"

int main(int argc, char** argv) {
    CLI::App app{"zygwave: harmonic-analysis and rough-wave experiment harness"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "list the available experiments");

    auto* run_cmd = app.add_subcommand("run", "run one experiment");
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 1;
    run_cmd->add_option("--config", config_path, "JSON config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory override");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "seed override");
    run_cmd->add_option("--threads", threads, "worker thread count")
        ->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list_cmd->parsed()) {
        for (const auto& name : zyg::suite_names()) std::printf("%s\n", name.c_str());
        return 0;
    }

    try {
        zyg::ExperimentConfig cfg = zyg::load_config_file(config_path);
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        zyg::set_thread_count(threads);

        const auto start = std::chrono::steady_clock::now();
        const zyg::SuiteResult r = zyg::run_suite(cfg);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();

        for (const auto& c : r.checks) {
            if (c.gated)
                std::printf("GATE %-40s %s  value=%s%s%s\n", c.name.c_str(),
                            c.pass ? "PASS" : "FAIL", zyg::fmt_g17(c.value).c_str(),
                            c.note.empty() ? "" : "  ", c.note.c_str());
            else
                std::printf("INFO %-40s value=%s%s%s\n", c.name.c_str(),
                            zyg::fmt_g17(c.value).c_str(), c.note.empty() ? "" : "  ",
                            c.note.c_str());
        }
        std::printf("%s: %s  (%.1fs, artifacts in %s)\n", r.suite.c_str(),
                    r.pass() ? "PASS" : "FAIL", secs, cfg.resolved_out().c_str());
        return r.pass() ? 0 : 1;
    } catch (const zyg::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const zyg::precondition_error& e) {
        std::fprintf(stderr, "precondition violated: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "experiment failed: %s\n", e.what());
        return 1;
    }
}
