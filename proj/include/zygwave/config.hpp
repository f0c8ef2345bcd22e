#pragma once

// Experiment configuration: one JSON file per run. Unknown keys are
// rejected, ranges are validated, and every field has a documented default,
// so a config can be as small as {"experiment": "lp-suite"}.
//
// Schema (defaults in parentheses):
//   experiment   : string, one of the suite names            (required)
//   seed         : unsigned integer                          (20260816)
//   out          : output directory                          ("out/<experiment>")
//   grid         : { n (256), dim (1) }
//   time         : { T (1.0) }
//   coefficient  : { family ("weierstrass" | "constant" | "smooth-x" |
//                    "hoelder"), J (6), axis ("tx" | "t" | "x"),
//                    lam0 (0.5), Lam0 (1.5), theta (0.6), value (1.0) }
//   data         : { kmax (42), s (0.5) }
//   sigma        : real > -1/2                               (0.0)
//   tolerances   : { <name>: real } gate overrides           ({})

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zygwave/common.hpp"

namespace zyg {

// Invalid configuration (parse error, unknown key, out-of-range value).
// The CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 20260816ULL;
    std::string out_dir;  // empty -> "out/<experiment>"

    int n = 256;
    int dim = 1;
    double T = 1.0;

    std::string family = "weierstrass";
    int J = 6;
    std::string axis = "tx";
    double lam0 = 0.5;
    double Lam0 = 1.5;
    double theta = 0.6;
    double constant_value = 1.0;

    int data_kmax = 42;
    double data_s = 0.5;

    double sigma = 0.0;

    std::map<std::string, double> tolerances;

    double tol(const std::string& name, double dflt) const {
        const auto it = tolerances.find(name);
        return it == tolerances.end() ? dflt : it->second;
    }
    std::string resolved_out() const {
        return out_dir.empty() ? "out/" + experiment : out_dir;
    }
};

// The known suite names in execution order.
const std::vector<std::string>& suite_names();

// Parse and validate; throws config_error on any problem.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace zyg
