#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nlqw/fit.hpp"

namespace nlqw {

// A named experiment with a flat JSON parameter map. Presets fill in the
// published parameters for each figure-style run; `custom` takes everything
// from the config.
struct ExperimentConfig {
    std::string name;
    nlohmann::json params() const;

    static ExperimentConfig preset(const std::string& name);
    static ExperimentConfig from_json(const nlohmann::json& j);
    // key=value overrides; values parsed as JSON when possible, else strings.
    void apply_override(const std::string& key_value);

    nlohmann::json data;
};

std::vector<std::string> preset_names();

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    std::string detail;
};

struct ExperimentSummary {
    std::string name;
    std::vector<CheckResult> checks;
    std::vector<std::string> output_files;
    bool all_passed() const;
};

// Runs the experiment, writes its CSV/JSON outputs under out_dir, and
// returns the summary (also written as summary.json). Throws
// std::invalid_argument with the offending field for bad configs.
ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 const std::string& out_dir);

}  // namespace nlqw
