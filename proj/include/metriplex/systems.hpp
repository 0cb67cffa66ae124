#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "metriplex/state.hpp"

namespace metriplex {

/// Friction or external force as a covector, given (q, v, S) with v = dH/dp.
using ForceLaw = std::function<Vector(const Vector& q, const Vector& v, double S)>;

/// Molar flux matrix J(S, N, mu) with J(k, l) the flow rate from compartment l
/// into compartment k. Must be antisymmetric.
using FluxLaw = std::function<Matrix(double S, const Vector& N, const Vector& mu)>;

/// Linear flux-force relations F = -lambda v and J(k, l) = -G(k, l) (mu_k - mu_l).
struct LinearTransport {
    std::function<Matrix(const Vector& q, double S)> friction_coefficients;  // lambda, n x n
    std::function<Matrix(double S, const Vector& N)> conductances;           // G, K x K, symmetric, >= 0
};

/// Everything needed to build a HamiltonianSystem. Empty laws mean zero,
/// except that with linear_transport present an empty friction or flux law is
/// derived from the linear relations.
struct HamiltonianDefinition {
    std::string name = "system";
    StateLayout layout;
    Observable hamiltonian = Observable::constant(0.0);
    ForceLaw friction;
    FluxLaw flux;
    ForceLaw external_force;
    std::optional<LinearTransport> linear_transport;
    std::optional<StateBox> audit_box;
    std::uint64_t audit_seed = 0x5eedULL;
    int audit_states = 16;
    double gradient_tolerance = 1e-5;
    double temperature_floor = 1e-10;
};

/// Simple thermodynamic system on T*Q x R^{K+1} described by its Hamiltonian.
///
/// Immutable after construction. The constructor audits the analytic gradient
/// of H against finite differences, flux antisymmetry, and (when declared) the
/// linear transport laws, at seeded random states; any failure is a hard
/// error. User closures must be pure.
class HamiltonianSystem {
public:
    explicit HamiltonianSystem(HamiltonianDefinition def);

    const std::string& name() const noexcept { return def_.name; }
    const StateLayout& layout() const noexcept { return def_.layout; }
    const Observable& hamiltonian() const noexcept { return def_.hamiltonian; }
    const StateBox& sample_box() const noexcept { return *def_.audit_box; }
    double temperature_floor() const noexcept { return def_.temperature_floor; }
    GradientMode gradient_mode() const noexcept { return def_.hamiltonian.mode(); }

    Vector friction(const Vector& q, const Vector& v, double S) const;
    Vector external_force(const Vector& q, const Vector& v, double S) const;
    Matrix flux(double S, const Vector& N, const Vector& mu) const;

    bool has_linear_transport() const noexcept { return def_.linear_transport.has_value(); }
    /// Throws MissingLinearTransport when none was declared.
    const LinearTransport& linear_transport() const;

    const HamiltonianDefinition& definition() const noexcept { return def_; }

private:
    void audit() const;

    HamiltonianDefinition def_;
};

/// Quantities every dissipative formula needs at one state.
struct ThermodynamicForces {
    Vector dH;         // full differential of H
    double T = 0.0;    // dH/dS
    Vector velocity;   // dH/dp
    Vector mu;         // dH/dN
    Vector friction;   // F^fr(q, v, S)
    Matrix flux;       // J(k, l)
    /// <F^fr, v> + sum_{k<l} J(k, l)(mu_k - mu_l); nonpositive for admissible laws.
    double power = 0.0;
};

/// Throws ZeroTemperature when |dH/dS| is below the system's floor.
ThermodynamicForces thermodynamic_forces(const HamiltonianSystem& sys, const Vector& x);

/// sum_{k<l} J(k, l) (a_k - a_l).
double flux_contraction(const Matrix& flux, const Vector& a);

/// mu_k = dH/dN_k. Throws NoCompartments when K = 0.
Vector chemical_potentials(const HamiltonianSystem& sys, const Vector& x);

/// Lagrangian description on TQ x R^{K+1}. The Lagrangian observable uses the
/// flat ordering [q, v, S, N] (velocities in the slot momenta occupy for H).
struct LagrangianSystem {
    std::string name = "lagrangian";
    StateLayout layout;
    Observable lagrangian = Observable::constant(0.0);
    /// d^2L/dv^2 at [q, v, S, N]; finite differences of dL/dv when empty.
    std::function<Matrix(const Vector&)> velocity_hessian;
    /// Newton starting point v(q, p, S, N); defaults to v = p.
    std::function<Vector(const Vector&)> velocity_seed;
    ForceLaw friction;
    FluxLaw flux;
    ForceLaw external_force;
    std::optional<LinearTransport> linear_transport;
    std::optional<StateBox> audit_box;
};

/// Solves dL/dv (q, v, S, N) = p for v at the Hamiltonian point x = [q, p, S, N].
/// Throws HyperregularityFailure after 50 Newton iterations without reaching
/// residual 1e-12.
Vector legendre_velocity(const LagrangianSystem& lag, const Vector& x);

/// H(q, p, S, N) = <p, v> - L(q, v, S, N) with dL/dv = p. The differential of
/// H follows from the Legendre identities dH/dp = v, dH/dq = -dL/dq,
/// dH/dS = -dL/dS and dH/dN = -dL/dN.
HamiltonianSystem legendre_to_hamiltonian(const LagrangianSystem& lag);

}  // namespace metriplex
