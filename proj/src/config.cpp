#include "zygwave/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace zyg {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "lp-suite",       "norms-suite",  "mollify-suite",
        "symb-calc-suite", "positivity-suite", "q-cancel-suite",
        "noloss-main",    "sigma-smooth", "s-comparison"};
    return names;
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error("config: unknown key '" + it.key() + "' in " + where);
}

double num_or(const json& j, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) throw config_error(std::string("config: '") + key + "' must be a number");
    return j[key].get<double>();
}

int int_or(const json& j, const char* key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer())
        throw config_error(std::string("config: '") + key + "' must be an integer");
    return j[key].get<int>();
}

std::string str_or(const json& j, const char* key, const std::string& dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_string())
        throw config_error(std::string("config: '") + key + "' must be a string");
    return j[key].get<std::string>();
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw config_error(std::string("config: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config: top level must be an object");
    reject_unknown(j,
                   {"experiment", "seed", "out", "grid", "time", "coefficient",
                    "data", "sigma", "tolerances"},
                   "top level");

    ExperimentConfig cfg;
    if (!j.contains("experiment") || !j["experiment"].is_string())
        throw config_error("config: 'experiment' (string) is required");
    cfg.experiment = j["experiment"].get<std::string>();
    bool known = false;
    for (const auto& name : suite_names()) known = known || name == cfg.experiment;
    if (!known) throw config_error("config: unknown experiment '" + cfg.experiment + "'");

    if (j.contains("seed")) {
        const json& s = j["seed"];
        const bool ok = s.is_number_unsigned() ||
                        (s.is_number_integer() && s.get<std::int64_t>() >= 0);
        if (!ok) throw config_error("config: 'seed' must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.out_dir = str_or(j, "out", "");

    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object()) throw config_error("config: 'grid' must be an object");
        reject_unknown(g, {"n", "dim"}, "grid");
        cfg.n = int_or(g, "n", cfg.n);
        cfg.dim = int_or(g, "dim", cfg.dim);
    }
    if (cfg.n < 16 || cfg.n > 4096 || (cfg.n & (cfg.n - 1)) != 0)
        throw config_error("config: grid.n must be a power of two in [16, 4096]");
    if (cfg.dim != 1 && cfg.dim != 2)
        throw config_error("config: grid.dim must be 1 or 2");

    if (j.contains("time")) {
        const json& t = j["time"];
        if (!t.is_object()) throw config_error("config: 'time' must be an object");
        reject_unknown(t, {"T"}, "time");
        cfg.T = num_or(t, "T", cfg.T);
    }
    if (!(cfg.T > 0.0) || cfg.T > 16.0)
        throw config_error("config: time.T must lie in (0, 16]");

    if (j.contains("coefficient")) {
        const json& c = j["coefficient"];
        if (!c.is_object()) throw config_error("config: 'coefficient' must be an object");
        reject_unknown(c, {"family", "J", "axis", "lam0", "Lam0", "theta", "value"},
                       "coefficient");
        cfg.family = str_or(c, "family", cfg.family);
        cfg.J = int_or(c, "J", cfg.J);
        cfg.axis = str_or(c, "axis", cfg.axis);
        cfg.lam0 = num_or(c, "lam0", cfg.lam0);
        cfg.Lam0 = num_or(c, "Lam0", cfg.Lam0);
        cfg.theta = num_or(c, "theta", cfg.theta);
        cfg.constant_value = num_or(c, "value", cfg.constant_value);
    }
    if (cfg.family != "weierstrass" && cfg.family != "constant" &&
        cfg.family != "smooth-x" && cfg.family != "hoelder")
        throw config_error("config: unknown coefficient.family '" + cfg.family + "'");
    if (cfg.axis != "t" && cfg.axis != "x" && cfg.axis != "tx")
        throw config_error("config: coefficient.axis must be 't', 'x' or 'tx'");
    if (cfg.J < 1 || cfg.J > 20)
        throw config_error("config: coefficient.J must lie in [1, 20]");
    if (!(cfg.lam0 > 0.0) || !(cfg.Lam0 >= cfg.lam0))
        throw config_error("config: need 0 < lam0 <= Lam0");
    if (!(cfg.theta > 0.0) || !(cfg.theta < 1.0))
        throw config_error("config: coefficient.theta must lie in (0,1)");

    if (j.contains("data")) {
        const json& d = j["data"];
        if (!d.is_object()) throw config_error("config: 'data' must be an object");
        reject_unknown(d, {"kmax", "s"}, "data");
        cfg.data_kmax = int_or(d, "kmax", cfg.data_kmax);
        cfg.data_s = num_or(d, "s", cfg.data_s);
    }
    if (cfg.data_kmax < 1 || cfg.data_kmax >= cfg.n / 2)
        throw config_error("config: data.kmax must lie in [1, n/2)");

    cfg.sigma = num_or(j, "sigma", cfg.sigma);
    if (!(cfg.sigma > -0.5) || cfg.sigma > 4.0)
        throw config_error("config: sigma must lie in (-1/2, 4]");

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) throw config_error("config: 'tolerances' must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            if (!it.value().is_number())
                throw config_error("config: tolerance '" + it.key() + "' must be a number");
            cfg.tolerances[it.key()] = it.value().get<double>();
        }
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is.good()) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace zyg
