#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "metriplex/dynamics.hpp"
#include "metriplex/poisson.hpp"
#include "metriplex/reduction.hpp"
#include "metriplex/systems.hpp"

namespace metriplex {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = true;  // residual <= threshold
    Vector worst_state;
};

/// Named, seeded results of the property checks. Each name appears at most once.
struct VerificationReport {
    std::uint64_t seed = 0;
    std::string system;
    std::string gradient_mode;
    std::vector<CheckResult> checks;

    /// Adds a check; throws InvalidArgument on a duplicate name or a
    /// non-finite residual being reported as passing.
    void record(std::string name, double residual, double threshold, Vector worst_state = {});
    void merge(const VerificationReport& other);
    bool all_passed() const;
    const CheckResult* find(std::string_view name) const;
    const CheckResult& at(std::string_view name) const;
};

/// Thresholds pinned per gradient mode.
struct Tolerances {
    double identity = 1e-10;       // degeneracies, (F,S) = [F,H], field consistency
    double antisymmetry = 1e-12;   // Poisson antisymmetry, symmetric-bracket defects
    double sign = 1e-12;           // [S,H], (S,S), friction power
    double metric_sign = 1e-10;    // (G,G)_met and its reduced / orbit analogues
    double leibniz = 1e-9;
    double bilinearity = 1e-10;
    double equivalence = 1e-9;
    double orbit_symmetry = 1e-9;
    double jacobi = 1e-6;

    static Tolerances for_mode(GradientMode mode);
};

struct AxiomOptions {
    int n_states = 100;
    int n_observables = 20;
    std::uint64_t seed = 0;
};

/// Full degeneracy / sign / symmetry / Leibniz / bilinearity ledger of every
/// bracket the system supports, at seeded random states and random quadratic
/// observables. Violations are recorded, never thrown; a state below the
/// temperature floor is recorded as a failure of "state.temperature_floor".
VerificationReport check_axioms(const HamiltonianSystem& sys, const AxiomOptions& options);
VerificationReport check_axioms(const ReducedSystem& sys, const AxiomOptions& options);

/// Names check_axioms must produce for this system.
std::vector<std::string> expected_axiom_checks(const HamiltonianSystem& sys);
std::vector<std::string> expected_axiom_checks(const ReducedSystem& sys);

/// Componentwise max discrepancy between the direct field and X_H plus each
/// bracket-assembled dissipative field.
VerificationReport check_equivalence(const HamiltonianSystem& sys, int n_states, std::uint64_t seed);
VerificationReport check_equivalence(const ReducedSystem& sys, int n_states, std::uint64_t seed);

struct LawTolerances {
    double energy = 1e-6;
    double entropy = 1e-9;
    double moles = 1e-9;
};

/// Relative energy drift, worst per-step entropy decrement, total-mole drift.
VerificationReport check_laws(const Trajectory& traj, const LawTolerances& tol = {});
VerificationReport check_laws(const ReducedTrajectory& traj, const LawTolerances& tol = {});

/// Casimir drift along a reduced trajectory (meaningful for orbit-preserving friction).
VerificationReport check_casimirs(const ReducedTrajectory& traj, const std::vector<Casimir>& casimirs,
                                  double threshold = 1e-8);

/// max |{{f,g},h} + {{g,h},f} + {{h,f},g}| over seeded random quadratic
/// triples at `point`, outer brackets differentiated by finite differences.
double jacobi_residual(const PoissonStructure& poisson, const Vector& point, std::uint64_t seed, int triples = 10);

/// jacobi_residual maximized over sampled points of the box.
VerificationReport check_jacobi(const PoissonStructure& poisson, const StateBox& box, std::uint64_t seed,
                                int points = 5, double threshold = 1e-6);

struct CheckInfo {
    std::string_view name;
    std::string_view statement;
};

/// Every check name the library can emit, with the property it certifies.
const std::vector<CheckInfo>& check_catalog();
const CheckInfo* find_check(std::string_view name);

}  // namespace metriplex
