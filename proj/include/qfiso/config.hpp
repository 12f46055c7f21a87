#pragma once

// Run configuration. A JSON file (path from --config or QFISO_CONFIG) may set
// any subset of the keys below; unknown keys are rejected so that typos do not
// silently fall back to defaults.
//
// {
//   "p_max": 149,
//   "format": "text" | "json",
//   "dataset": "path/to/table1.json",
//   "threads": 4,
//   "budget": 50000000,
//   "grid": { "max_abs_d": 200, "max_n": 100, "max_p": 50, "iso_max_n": 50,
//             "iso_max_p": 100, "psi_discriminants": [-3, -4], "psi_max_n": 300 }
// }

#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "io.hpp"
#include "theorems.hpp"

namespace qfiso {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Config {
    Int p_max = 149;
    std::string format = "text";
    std::string dataset = default_dataset_path();
    int threads = 1;
    Int budget = 50000000;
    Grid grid;

    void validate() const {
        if (p_max < 2) throw ConfigError("p_max must be at least 2");
        if (format != "text" && format != "json") throw ConfigError("format must be 'text' or 'json'");
        if (threads < 1) throw ConfigError("threads must be positive");
        if (budget < 1) throw ConfigError("budget must be positive");
        try {
            grid.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("grid: ") + e.what());
        }
    }
};

namespace detail {

inline void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <class T>
void read_key(const Json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "': " + j.at(key).dump());
    }
}

}  // namespace detail

inline Grid grid_from_json(const Json& j, Grid g = {}) {
    detail::reject_unknown(j,
                           {"max_abs_d", "max_n", "max_p", "iso_max_n", "iso_max_p", "psi_discriminants", "psi_max_n"},
                           "grid");
    detail::read_key(j, "max_abs_d", g.max_abs_d);
    detail::read_key(j, "max_n", g.max_n);
    detail::read_key(j, "max_p", g.max_p);
    detail::read_key(j, "iso_max_n", g.iso_max_n);
    detail::read_key(j, "iso_max_p", g.iso_max_p);
    detail::read_key(j, "psi_discriminants", g.psi_discriminants);
    detail::read_key(j, "psi_max_n", g.psi_max_n);
    return g;
}

inline Config config_from_json(const Json& j, Config c = {}) {
    detail::reject_unknown(j, {"p_max", "format", "dataset", "threads", "budget", "grid"}, "config");
    detail::read_key(j, "p_max", c.p_max);
    detail::read_key(j, "format", c.format);
    detail::read_key(j, "dataset", c.dataset);
    detail::read_key(j, "threads", c.threads);
    detail::read_key(j, "budget", c.budget);
    if (j.contains("grid")) c.grid = grid_from_json(j.at("grid"), c.grid);
    c.grid.threads = c.threads;
    c.validate();
    return c;
}

inline Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

/// Explicit path wins; otherwise QFISO_CONFIG; otherwise defaults.
inline Config load_config(const std::string& explicit_path = "") {
    if (!explicit_path.empty()) return load_config_file(explicit_path);
    if (const char* env = std::getenv("QFISO_CONFIG"); env && *env) return load_config_file(env);
    return Config{};
}

}  // namespace qfiso
