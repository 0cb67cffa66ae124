#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "metriplex/dynamics.hpp"
#include "metriplex/errors.hpp"
#include "metriplex/scenarios.hpp"
#include "metriplex/verify.hpp"

namespace metriplex {

/// Malformed configuration or override; maps to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr int exit_pass = 0;
inline constexpr int exit_suite_failure = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_diverged = 3;

/// laws, axioms, equivalence, jacobi, casimir.
const std::vector<std::string>& all_suites();

struct RunConfig {
    std::string scenario;
    ParameterMap parameters;
    std::optional<double> h;      // scenario recommendation when unset
    std::optional<double> t_end;  // scenario recommendation when unset
    int stride = 1;
    std::vector<std::string> suites = all_suites();
    std::uint64_t seed = 0;
    std::filesystem::path out = "metriplex_out";
    MolePolicy moles = MolePolicy::Warn;
    bool sabotage = false;

    /// Throws ConfigError on h <= 0, t_end <= 0, stride < 1, unknown suites or
    /// an empty scenario name.
    void validate() const;
};

/// Parses a JSON config. Keys: scenario, parameters, h, t_end, stride,
/// suites ("all" or a list), seed, out, moles, sabotage. Unknown keys are
/// rejected. A missing seed falls back to `default_seed`.
RunConfig parse_config(const std::string& json_text, std::uint64_t default_seed = 0);
RunConfig load_config(const std::filesystem::path& path, std::uint64_t default_seed = 0);

/// METRIPLEX_SEED when set and valid, else 0. Throws ConfigError on garbage.
std::uint64_t seed_from_environment();

/// Command-line overrides; set fields replace the config values.
struct Overrides {
    std::optional<std::string> scenario;
    std::optional<double> h;
    std::optional<double> t_end;
    std::optional<int> stride;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> suites;  // replaces when nonempty
    std::optional<std::filesystem::path> out;
    std::vector<std::string> params;  // "key=value"
    bool sabotage = false;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

struct RunResult {
    int exit_code = exit_pass;
    std::string message;
    VerificationReport report;
};

/// Builds the scenario, integrates, runs the requested suites and writes
/// trajectory.csv, report.json and summary.txt into config.out.
RunResult run(const RunConfig& config, std::ostream& log);

/// report.json contents; deterministic for a fixed config and seed.
std::string report_json(const RunConfig& config, const VerificationReport& report);

}  // namespace metriplex
