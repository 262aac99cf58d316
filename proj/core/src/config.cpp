#include "qaoabench/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qaoabench/errors.hpp"

namespace qaoabench {

void validate(const RunConfig& config) {
    if (config.n < 2) throw ConfigError("config field 'n': need at least 2 vertices");
    if (config.e_p_values.empty()) throw ConfigError("config field 'e_p_values': empty");
    for (double e_p : config.e_p_values) {
        if (!(e_p >= 0.0 && e_p <= 1.0)) {
            throw ConfigError("config field 'e_p_values': entries must lie in [0, 1]");
        }
    }
    if (config.per_class < 1) throw ConfigError("config field 'per_class': must be positive");
    if (config.depths.empty()) throw ConfigError("config field 'depths': empty");
    if (!std::is_sorted(config.depths.begin(), config.depths.end()) ||
        std::adjacent_find(config.depths.begin(), config.depths.end()) != config.depths.end()) {
        throw ConfigError("config field 'depths': must be strictly ascending");
    }
    if (config.depths.front() < 1) throw ConfigError("config field 'depths': must be positive");
    for (const auto& [p, budget] : config.budgets) {
        if (budget < 1) throw ConfigError("config field 'budgets': budgets must be positive");
        if (p < 1) throw ConfigError("config field 'budgets': depths must be positive");
    }
    if (!(config.ftol > 0.0)) throw ConfigError("config field 'ftol': must be positive");
    if (!(config.xtol > 0.0)) throw ConfigError("config field 'xtol': must be positive");
    if (config.workers < 1) throw ConfigError("config field 'workers': must be positive");
    if (!(config.threshold > 0.0 && config.threshold < 0.5)) {
        throw ConfigError("config field 'threshold': must lie in (0, 0.5)");
    }
    if (config.concentration_step < 1) {
        throw ConfigError("config field 'concentration_step': must be positive");
    }
    if (config.manifest_path.empty()) throw ConfigError("config field 'manifest': empty path");
    if (config.journal_path.empty()) throw ConfigError("config field 'journal': empty path");
    if (config.out_dir.empty()) throw ConfigError("config field 'out_dir': empty path");
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    nlohmann::json j = nlohmann::json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw ConfigError("config " + path + ": expected a JSON object");
    }

    static const std::set<std::string> known_keys = {
        "manifest",   "journal",     "out_dir",   "n",       "e_p_values",
        "per_class",  "depths",      "budgets",   "ftol",    "xtol",
        "master_seed", "workers",    "padded_starts", "threshold", "concentration_step",
    };
    for (const auto& [key, value] : j.items()) {
        if (!known_keys.contains(key)) {
            throw ConfigError("config " + path + ": unknown field '" + key + "'");
        }
    }

    RunConfig config;
    try {
        if (j.contains("manifest")) config.manifest_path = j["manifest"].get<std::string>();
        if (j.contains("journal")) config.journal_path = j["journal"].get<std::string>();
        if (j.contains("out_dir")) config.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("n")) config.n = j["n"].get<int>();
        if (j.contains("e_p_values")) {
            config.e_p_values = j["e_p_values"].get<std::vector<double>>();
        }
        if (j.contains("per_class")) config.per_class = j["per_class"].get<int>();
        if (j.contains("depths")) config.depths = j["depths"].get<std::vector<int>>();
        if (j.contains("budgets")) {
            config.budgets.clear();
            for (const auto& [key, value] : j["budgets"].items()) {
                config.budgets[std::stoi(key)] = value.get<std::uint64_t>();
            }
        }
        if (j.contains("ftol")) config.ftol = j["ftol"].get<double>();
        if (j.contains("xtol")) config.xtol = j["xtol"].get<double>();
        if (j.contains("master_seed")) config.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("workers")) config.workers = j["workers"].get<int>();
        if (j.contains("padded_starts")) config.padded_starts = j["padded_starts"].get<bool>();
        if (j.contains("threshold")) config.threshold = j["threshold"].get<double>();
        if (j.contains("concentration_step")) {
            config.concentration_step = j["concentration_step"].get<int>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    } catch (const std::invalid_argument&) {
        throw ConfigError("config " + path + ": field 'budgets': keys must be integer depths");
    }

    validate(config);
    return config;
}

std::string config_to_json(const RunConfig& config) {
    nlohmann::ordered_json j;
    j["manifest"] = config.manifest_path;
    j["journal"] = config.journal_path;
    j["out_dir"] = config.out_dir;
    j["n"] = config.n;
    j["e_p_values"] = config.e_p_values;
    j["per_class"] = config.per_class;
    j["depths"] = config.depths;
    auto budgets = nlohmann::ordered_json::object();
    for (const auto& [p, budget] : config.budgets) budgets[std::to_string(p)] = budget;
    j["budgets"] = std::move(budgets);
    j["ftol"] = config.ftol;
    j["xtol"] = config.xtol;
    j["master_seed"] = config.master_seed;
    j["workers"] = config.workers;
    j["padded_starts"] = config.padded_starts;
    j["threshold"] = config.threshold;
    j["concentration_step"] = config.concentration_step;
    return j.dump(2) + "\n";
}

RunSettings to_run_settings(const RunConfig& config) {
    RunSettings settings;
    settings.depths = config.depths;
    settings.budgets = config.budgets;
    settings.ftol = config.ftol;
    settings.xtol = config.xtol;
    settings.seed = config.master_seed;
    settings.padded_starts = config.padded_starts;
    settings.near_optimal_threshold = config.threshold;
    settings.workers = config.workers;
    return settings;
}

}  // namespace qaoabench
