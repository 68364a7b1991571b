#pragma once

#include "isogrow/classify.hpp"
#include "isogrow/conjugation.hpp"
#include "isogrow/selection.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace isogrow {

// Exit codes shared by the pipeline and the CLI.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitParseError = 4;

// The file is unreadable or not valid JSON.
struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The JSON parses but the contents are inconsistent (bad dimensions,
// missing fields, non-orthogonal matrices, ...).
struct ConfigInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PairConfig {
    std::vector<int> subgroup_indices;
    AffineSubspace V;
};

struct Config {
    int dim = 0;
    std::vector<Isometry> generators;
    std::optional<ConformalMap> conformal;
    std::optional<PairConfig> pair;
    std::vector<double> radii;
    double tol = kDefaultTol;
};

Config load_config(const std::string& path);

struct PipelineResult {
    int exit_code = kExitSuccess;
    nlohmann::json report;
    std::optional<GrowthProfile> profile;
};

// Enumeration -> growth -> dimension -> optional conjugation analysis ->
// optional geometric selection -> classification. Writes report.json and
// growth.csv into out_dir when it is non-empty.
PipelineResult run_pipeline(const std::string& config_path, const std::string& out_dir);

nlohmann::json report_to_json(const ObstructionReport& report);
nlohmann::json verdict_to_json(const ConjugationVerdict& verdict);
nlohmann::json theorem_to_json(const TheoremReport& report);

}  // namespace isogrow
