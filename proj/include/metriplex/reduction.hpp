#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "metriplex/dynamics.hpp"
#include "metriplex/lie_algebra.hpp"
#include "metriplex/poisson.hpp"
#include "metriplex/state.hpp"

namespace metriplex {

/// Reduced friction force f^fr in g*, evaluated with xi = dh/dmu.
struct ReducedFriction {
    enum class Kind { None, Linear, DoubleBracket, General };

    using Law = std::function<Vector(const Vector& xi, const Vector& mu, const Vector& n, double S)>;
    using Coefficients = std::function<Matrix(const Vector& n, double S)>;

    Kind kind = Kind::None;
    Law law;              // General only
    Coefficients gamma;   // Linear only: f^fr = -gamma(n, S) xi

    static ReducedFriction none() { return {}; }
    static ReducedFriction linear(Coefficients gamma);
    /// ad*_{[ad*_xi mu]#} mu, orbit preserving. Requires no quotient variable.
    static ReducedFriction double_bracket();
    static ReducedFriction general(Law law);
};

struct Casimir {
    std::string name;
    Observable function;  // on the flat reduced coordinates [mu, n, S]
};

struct ReducedDefinition {
    std::string name = "reduced";
    LieAlgebra algebra = LieAlgebra::so3();
    Index m = 0;  // embedding dimension of the quotient N
    Observable hamiltonian = Observable::constant(0.0);
    ReducedFriction friction;
    /// B(n), m x d, with xi_N(n) = B(n) xi. Zero when empty.
    std::function<Matrix(const Vector& n)> generator;
    std::vector<Casimir> casimirs;
    std::optional<StateBox> audit_box;
    std::uint64_t audit_seed = 0x5eedULL;
    int audit_states = 16;
    double gradient_tolerance = 1e-5;
    double temperature_floor = 1e-10;
};

/// Reduced thermodynamic system on g* x N x R. Immutable after construction;
/// the constructor audits the analytic gradient of h and the shapes of the
/// generator matrix.
class ReducedSystem {
public:
    explicit ReducedSystem(ReducedDefinition def);

    const std::string& name() const noexcept { return def_.name; }
    const LieAlgebra& algebra() const noexcept { return def_.algebra; }
    ReducedLayout layout() const noexcept { return {def_.algebra.dim(), def_.m}; }
    const Observable& hamiltonian() const noexcept { return def_.hamiltonian; }
    const ReducedFriction& friction() const noexcept { return def_.friction; }
    const std::vector<Casimir>& casimirs() const noexcept { return def_.casimirs; }
    const StateBox& sample_box() const noexcept { return *def_.audit_box; }
    double temperature_floor() const noexcept { return def_.temperature_floor; }
    GradientMode gradient_mode() const noexcept { return def_.hamiltonian.mode(); }

    Matrix generator(const Vector& n) const;
    Vector friction_force(const Vector& xi, const Vector& x) const;
    bool orbit_preserving() const noexcept { return def_.friction.kind == ReducedFriction::Kind::DoubleBracket; }

    /// Lie-Poisson structure on g* x N x R (zero in the S direction).
    PoissonStructure poisson() const;

private:
    ReducedDefinition def_;
};

/// ad*_xi mu.
Vector ad_star(const LieAlgebra& alg, const Vector& xi, const Vector& mu);

/// J(n, alpha) = B(n)^T alpha, so that <J(n, alpha), xi> = <alpha, B(n) xi>.
Vector momentum_map(const ReducedSystem& sys, const Vector& n, const Vector& alpha);

struct ReducedForces {
    Vector dh;
    double T = 0.0;
    Vector xi;        // dh/dmu
    Vector friction;  // f^fr
    double power = 0.0;  // <f^fr, xi>
};

/// Throws ZeroTemperature when |dh/dS| is below the floor.
ReducedForces reduced_forces(const ReducedSystem& sys, const Vector& x);

/// mu' = ad*_{dh/dmu} mu + J(dh/dn) + f^fr, n' = -B(n) dh/dmu, S' = -(1/T) <f^fr, dh/dmu>.
Vector reduced_vector_field(const ReducedSystem& sys, const Vector& x);

/// {f, g} = -<mu, [df/dmu, dg/dmu]> + <df/dmu, J(dg/dn)> - <dg/dmu, J(df/dn)>.
double lie_poisson_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g, const Vector& x);

/// [f, h] = <f^fr, df/dmu> - (df/dS / T) <f^fr, dh/dmu>.
double reduced_single_bracket(const ReducedSystem& sys, const Observable& f, const Vector& x);
double reduced_single_bracket(const ReducedLayout& layout, const ReducedForces& forces, const Vector& df);

/// (f, g) = <f^fr, df/dmu> dg/dS + <f^fr, dg/dmu> df/dS - (1/T) <f^fr, dh/dmu> df/dS dg/dS.
double reduced_double_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g, const Vector& x);
double reduced_double_bracket(const ReducedLayout& layout, const ReducedForces& forces, const Vector& df,
                              const Vector& dg);

/// (1/T) <a_f, gamma a_g>, a_f = df/dmu T - dh/dmu df/dS. Needs linear friction.
double reduced_metriplectic_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g,
                                    const Vector& x);
double reduced_metriplectic_bracket(const ReducedLayout& layout, const ReducedForces& forces, const Matrix& gamma,
                                    const Vector& df, const Vector& dg);

/// ad*_{[ad*_xi mu]#} mu.
Vector double_bracket_friction(const LieAlgebra& alg, const Vector& xi, const Vector& mu);
/// Same, with xi = dh/dmu at the reduced point x.
Vector double_bracket_friction(const ReducedSystem& sys, const Vector& x);

/// Orbit gradient of f in the normal metric: -ad*_{[ad*_{df/dmu} mu]#} mu.
Vector orbit_gradient(const LieAlgebra& alg, const Vector& df_dmu, const Vector& mu);

/// Metriplectic bracket on a coadjoint orbit times R. Every normal-metric
/// pairing gamma_O(grad f, grad g) is reduced to the duality pairing
/// <grad g, df/dmu>; the result is therefore not symmetric by construction
/// and orbit_bracket_symmetry_defect audits it.
double orbit_metriplectic_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g,
                                  const Vector& x);
double orbit_metriplectic_bracket(const ReducedSystem& sys, const Vector& df, const Vector& dg, const Vector& x);
double orbit_bracket_symmetry_defect(const ReducedSystem& sys, const Observable& f, const Observable& g,
                                     const Vector& x);

/// Lie-Poisson field X_h = P dh.
Vector reduced_hamiltonian_field(const ReducedSystem& sys, const Vector& x);
/// Dissipative fields assembled from the brackets on coordinate observables.
Vector reduced_dissipative_field_single(const ReducedSystem& sys, const Vector& x);
Vector reduced_dissipative_field_double(const ReducedSystem& sys, const Vector& x);
Vector reduced_dissipative_field_metriplectic(const ReducedSystem& sys, const Vector& x);
/// K_O dS from the orbit bracket (double-bracket friction only).
Vector reduced_dissipative_field_orbit(const ReducedSystem& sys, const Vector& x);

struct ReducedTrajectory {
    ReducedLayout layout;
    std::vector<std::string> casimir_names;
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<double> energy;
    std::vector<Vector> casimir_values;

    std::size_t size() const noexcept { return times.size(); }
    double entropy(std::size_t i) const { return layout.S_of(states.at(i)); }

    /// t, mu_1..mu_d, n_1..n_m, S, h, casimir_1..
    std::vector<std::string> csv_header() const;
    void write_csv(std::ostream& os) const;
};

ReducedTrajectory integrate_reduced(const ReducedSystem& sys, const Vector& x0, const IntegrationOptions& options);

/// Per Casimir, max_t |c(mu(t)) - c(mu(0))|.
std::vector<double> casimir_drift(const ReducedTrajectory& traj, const std::vector<Casimir>& casimirs);

/// 1/2 |mu|^2, the so(3) Casimir.
Casimir so3_casimir(const ReducedLayout& layout);

}  // namespace metriplex
