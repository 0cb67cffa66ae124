#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "metriplex/systems.hpp"

namespace metriplex {

/// Tangent vector field on flat coordinates.
using StateField = std::function<Vector(const Vector&)>;

/// q' = dH/dp, p' = -dH/dq + F^fr + F^ext, N_k' = sum_l J(k, l),
/// S' = -(1/T) [<F^fr, dH/dp> + sum_{k<l} J(k, l)(mu_k - mu_l)].
Vector direct_vector_field(const HamiltonianSystem& sys, const Vector& x);

/// S' from the friction and mass-transfer contributions, T = dH/dS.
double entropy_production_rate(const HamiltonianSystem& sys, const Vector& x);

/// One classical fourth-order Runge-Kutta step.
Vector rk4_step(const StateField& field, const Vector& x, double h);

/// Number of fixed steps covering [0, t_end]; the last one may be shorter.
std::size_t step_count(double t_end, double h);

enum class MolePolicy { Ignore, Warn, Abort };

struct IntegrationOptions {
    double h = 1e-3;
    double t_end = 10.0;
    int stride = 1;  // record every stride-th step (the final state is always recorded)
    MolePolicy moles = MolePolicy::Warn;
};

/// Recorded samples with thermodynamic diagnostics, all arrays length-matched.
struct Trajectory {
    StateLayout layout;
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<double> energy;
    std::vector<double> temperature;
    std::vector<double> entropy_production;
    std::vector<double> total_moles;
    std::vector<Vector> chemical_potentials;
    /// W_k(t) = integral of mu_k from the first sample, trapezoidal rule on the step grid.
    std::vector<Vector> displacements;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return times.size(); }
    ThermoMechState state(std::size_t i) const { return ThermoMechState::unflatten(layout, states.at(i)); }
    double entropy(std::size_t i) const { return layout.S_of(states.at(i)); }

    /// t, q_1..q_n, p_1..p_n, S, N_1..N_K, H, T, sigma, W_1..W_K, totalN
    std::vector<std::string> csv_header() const;
    void write_csv(std::ostream& os) const;
};

/// Fixed-step RK4 integration of `field` (the direct vector field when empty).
/// Throws DivergedAt on a non-finite state, ZeroTemperature stamped with the
/// time of failure, or NegativeMoles under MolePolicy::Abort.
Trajectory integrate(const HamiltonianSystem& sys, const Vector& x0, const IntegrationOptions& options,
                     const StateField& field = {});

struct AdmissibilityReport {
    static constexpr double threshold = 1e-12;
    double max_friction_power = 0.0;  // max <F^fr, v>
    double max_flux_power = 0.0;      // max J(k, l)(mu_k - mu_l)
    Vector worst_friction_state;
    Vector worst_flux_state;
    bool pass = true;
};

/// Second-law sign conditions on the friction and flux laws over the given states.
AdmissibilityReport admissibility_audit(const HamiltonianSystem& sys, const std::vector<Vector>& states);

}  // namespace metriplex
