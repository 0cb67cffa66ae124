#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "metriplex/reduction.hpp"
#include "metriplex/systems.hpp"

namespace metriplex {

using ParameterMap = std::map<std::string, double>;

struct ScenarioSpec {
    std::string name;
    ParameterMap parameters;  // defaults merged with overrides
    Vector initial_state;
    double h = 1e-3;
    double t_end = 10.0;
    /// Check names that must pass with the default parameters.
    std::vector<std::string> expected_checks;
};

/// A built scenario: exactly one of `system` and `reduced` is set.
struct Scenario {
    ScenarioSpec spec;
    std::shared_ptr<const HamiltonianSystem> system;
    std::shared_ptr<const ReducedSystem> reduced;

    bool is_reduced() const noexcept { return reduced != nullptr; }
};

struct ScenarioInfo {
    std::string name;
    std::string description;
    ParameterMap defaults;
};

/// Built-in scenarios in a fixed order.
const std::vector<ScenarioInfo>& scenario_catalog();

struct BuildOptions {
    /// Flip the sign of every dissipative law and drop the linear-transport
    /// declaration. Negative-path testing only.
    bool sabotage = false;
};

/// Throws UnknownScenario for an unknown name and InvalidArgument for an
/// unknown parameter key or an inadmissible value. Boolean switches
/// (fd_gradients, nonlinear_entropy) take 0 or 1.
Scenario build_scenario(const std::string& name, const ParameterMap& overrides = {}, BuildOptions options = {});

}  // namespace metriplex
