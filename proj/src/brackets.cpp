#include "metriplex/brackets.hpp"

#include "metriplex/errors.hpp"

namespace metriplex {

double single_generator_bracket(const StateLayout& l, const ThermodynamicForces& f, const Vector& dF)
{
    const double friction = f.friction.dot(l.p_of(dF));
    const double transfer = flux_contraction(f.flux, l.N_of(dF));
    return friction + transfer - l.S_of(dF) / f.T * f.power;
}

double single_generator_bracket(const HamiltonianSystem& sys, const Observable& F, const Vector& x)
{
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    return single_generator_bracket(sys.layout(), f, F.gradient(x));
}

double double_generator_bracket(const StateLayout& l, const ThermodynamicForces& f, const Vector& dF,
                                const Vector& dG)
{
    const double F_S = l.S_of(dF);
    const double G_S = l.S_of(dG);
    const double friction = f.friction.dot(l.p_of(dF)) * G_S + f.friction.dot(l.p_of(dG)) * F_S;
    const double transfer = flux_contraction(f.flux, l.N_of(dF)) * G_S + flux_contraction(f.flux, l.N_of(dG)) * F_S;
    return friction + transfer - f.power / f.T * F_S * G_S;
}

double double_generator_bracket(const HamiltonianSystem& sys, const Observable& F, const Observable& G,
                                const Vector& x)
{
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    return double_generator_bracket(sys.layout(), f, F.gradient(x), G.gradient(x));
}

LinearCoefficients linear_coefficients(const HamiltonianSystem& sys, const Vector& x)
{
    const LinearTransport& lt = sys.linear_transport();
    const StateLayout& l = sys.layout();
    return {lt.friction_coefficients(l.q_of(x), l.S_of(x)), lt.conductances(l.S_of(x), l.N_of(x))};
}

double metriplectic_bracket(const StateLayout& l, const ThermodynamicForces& f, const LinearCoefficients& c,
                            const Vector& dF, const Vector& dG)
{
    const double T = f.T;
    const double F_S = l.S_of(dF);
    const double G_S = l.S_of(dG);
    const Vector A_F = l.p_of(dF) * T - f.velocity * F_S;
    const Vector A_G = l.p_of(dG) * T - f.velocity * G_S;
    double sum = A_F.dot(c.lambda * A_G);

    const auto F_N = l.N_of(dF);
    const auto G_N = l.N_of(dG);
    for (Index k = 0; k < l.K; ++k) {
        for (Index m = k + 1; m < l.K; ++m) {
            const double affinity = f.mu[k] - f.mu[m];
            const double B_F = (F_N[k] - F_N[m]) * T - affinity * F_S;
            const double B_G = (G_N[k] - G_N[m]) * T - affinity * G_S;
            sum += c.conductance(k, m) * B_F * B_G;
        }
    }
    return sum / T;
}

double metriplectic_bracket(const HamiltonianSystem& sys, const Observable& F, const Observable& G,
                            const Vector& x)
{
    const LinearCoefficients c = linear_coefficients(sys, x);
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    return metriplectic_bracket(sys.layout(), f, c, F.gradient(x), G.gradient(x));
}

Vector hamiltonian_vector_field(const HamiltonianSystem& sys, const Vector& x)
{
    const StateLayout& l = sys.layout();
    return canonical_poisson(l.n, l.K).hamiltonian_field(sys.hamiltonian(), x);
}

Vector dissipative_field_single(const HamiltonianSystem& sys, const Vector& x)
{
    const StateLayout& l = sys.layout();
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    Vector D(l.dim());
    for (Index i = 0; i < l.dim(); ++i) {
        D[i] = single_generator_bracket(l, f, Vector::Unit(l.dim(), i));
    }
    return D;
}

namespace {

template <typename Bracket>
SymmetricDissipation assemble_symmetric(const StateLayout& l, Bracket&& bracket)
{
    SymmetricDissipation out;
    out.K.resize(l.dim(), l.dim());
    for (Index i = 0; i < l.dim(); ++i) {
        for (Index j = 0; j < l.dim(); ++j) {
            out.K(i, j) = bracket(Vector::Unit(l.dim(), i), Vector::Unit(l.dim(), j));
        }
    }
    out.field = out.K * Vector::Unit(l.dim(), l.S());
    out.symmetry_defect = (out.K - out.K.transpose()).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace

SymmetricDissipation dissipative_field_double(const HamiltonianSystem& sys, const Vector& x)
{
    const StateLayout& l = sys.layout();
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    return assemble_symmetric(l, [&](const Vector& a, const Vector& b) { return double_generator_bracket(l, f, a, b); });
}

SymmetricDissipation dissipative_field_metriplectic(const HamiltonianSystem& sys, const Vector& x)
{
    const StateLayout& l = sys.layout();
    const LinearCoefficients c = linear_coefficients(sys, x);
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    return assemble_symmetric(l, [&](const Vector& a, const Vector& b) { return metriplectic_bracket(l, f, c, a, b); });
}

}  // namespace metriplex
