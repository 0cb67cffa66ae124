#pragma once

#include "metriplex/poisson.hpp"
#include "metriplex/systems.hpp"

namespace metriplex {

// Dissipation brackets of a HamiltonianSystem. Each comes in two forms: on
// observables, and on differentials already evaluated at x (with the forces
// at x precomputed), which is what field assembly and the audits use.

/// [F, H] = <F^fr, dF/dp> + sum_{k<l} J(k,l)(dF/dN_k - dF/dN_l) - (dF/dS / T) * power.
double single_generator_bracket(const HamiltonianSystem& sys, const Observable& F, const Vector& x);
double single_generator_bracket(const StateLayout& layout, const ThermodynamicForces& forces, const Vector& dF);

/// Symmetric double-generator bracket (F, G); (F, S) equals [F, H].
double double_generator_bracket(const HamiltonianSystem& sys, const Observable& F, const Observable& G,
                                const Vector& x);
double double_generator_bracket(const StateLayout& layout, const ThermodynamicForces& forces, const Vector& dF,
                                const Vector& dG);

/// (F, G)_met = (1/T) <A_F, lambda A_G> + (1/T) sum_{k<l} G^{kl} B_F^{kl} B_G^{kl} with
/// A_F = dF/dp T - dH/dp dF/dS and B_F^{kl} = (dF/dN_k - dF/dN_l) T - (mu_k - mu_l) dF/dS.
/// Throws MissingLinearTransport unless the system declares linear laws.
double metriplectic_bracket(const HamiltonianSystem& sys, const Observable& F, const Observable& G,
                            const Vector& x);

/// lambda(q, S) and G(S, N) at x, for repeated metriplectic evaluations.
struct LinearCoefficients {
    Matrix lambda;
    Matrix conductance;
};
LinearCoefficients linear_coefficients(const HamiltonianSystem& sys, const Vector& x);
double metriplectic_bracket(const StateLayout& layout, const ThermodynamicForces& forces,
                            const LinearCoefficients& coeffs, const Vector& dF, const Vector& dG);

/// X_H = J dH for the canonical structure.
Vector hamiltonian_vector_field(const HamiltonianSystem& sys, const Vector& x);

/// D_H assembled from [x_i, H] on coordinate observables.
Vector dissipative_field_single(const HamiltonianSystem& sys, const Vector& x);

/// Coordinate matrix of a symmetric dissipation bracket and the field K dS.
struct SymmetricDissipation {
    Matrix K;
    Vector field;
    double symmetry_defect = 0.0;  // max |K - K^T|
};

SymmetricDissipation dissipative_field_double(const HamiltonianSystem& sys, const Vector& x);
SymmetricDissipation dissipative_field_metriplectic(const HamiltonianSystem& sys, const Vector& x);

}  // namespace metriplex
