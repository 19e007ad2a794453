#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lightshift/report.hpp"

namespace lightshift {

/// Scenario names accepted by `run`.
const std::vector<std::string>& scenario_names();

struct SweepConfig {
    std::string parameter;
    std::vector<double> values;
    std::string scenario = "fig3b";
};

struct RunConfig {
    Scheme scheme = Scheme::SelfKerr;
    Tier tier = Tier::Eliminated;
    VMode mode = VMode::Physical;
    std::string scenario = "fig3b";
    ParamOverrides params; ///< absolute values; "10g" already resolved
    std::size_t grid_points = 512;
    int jobs = 1;
    bool strict = false;
    RegimeThresholds thresholds;
    std::optional<SweepConfig> sweep;
    std::vector<Branch> branches;
    std::string out_dir = ".";
};

/// "1e8" -> 1e8, "10g" -> 10 * g, "g" -> g, "-2.5g" -> -2.5 * g.
double parse_rate(const std::string& text, double g);

/// Parses a YAML document. Unknown keys and bad values raise ValidationError
/// naming the key and its line.
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

/// Scenario defaults for N atoms with the config's overrides applied (not derived).
SchemeParams scenario_params(const RunConfig& c, int n_atoms = 1);
ScenarioOptions scenario_options(const RunConfig& c);

/// Echo of every setting except the output directory.
Json to_json(const RunConfig& c);
/// 16 hex digits of FNV-1a over the echo; stable across runs and platforms.
std::string config_hash(const RunConfig& c);

} // namespace lightshift
