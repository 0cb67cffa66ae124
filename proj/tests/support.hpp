#pragma once

#include <cmath>

#include "metriplex/reduction.hpp"
#include "metriplex/systems.hpp"

namespace testsys {

using namespace metriplex;

inline Vector vec(std::initializer_list<double> v)
{
    Vector x(static_cast<Index>(v.size()));
    Index i = 0;
    for (double d : v) x[i++] = d;
    return x;
}

/// H = p^2/2 + q^2/2 + S with F = -lambda p.
inline HamiltonianSystem oscillator(double lambda)
{
    HamiltonianDefinition def;
    def.name = "oscillator";
    def.layout = {1, 0};
    def.hamiltonian = Observable([](const Vector& x) { return 0.5 * x[1] * x[1] + 0.5 * x[0] * x[0] + x[2]; },
                                 [](const Vector& x) { return vec({x[0], x[1], 1.0}); });
    def.linear_transport = LinearTransport{[lambda](const Vector&, double) { return Matrix::Constant(1, 1, lambda); },
                                           [](double, const Vector&) { return Matrix(0, 0); }};
    return HamiltonianSystem(def);
}

/// n = 1 with no mechanical energy; H = S + 1/2 (N_1^2 + N_2^2), G^{12} = g.
inline HamiltonianSystem two_compartments(double g)
{
    HamiltonianDefinition def;
    def.name = "two_compartments";
    def.layout = {1, 2};
    def.hamiltonian = Observable([](const Vector& x) { return x[2] + 0.5 * (x[3] * x[3] + x[4] * x[4]); },
                                 [](const Vector& x) { return vec({0.0, 0.0, 1.0, x[3], x[4]}); });
    def.linear_transport = LinearTransport{[](const Vector&, double) { return Matrix::Zero(1, 1); },
                                           [g](double, const Vector&) {
                                               Matrix G(2, 2);
                                               G << 0.0, g, g, 0.0;
                                               return G;
                                           }};
    return HamiltonianSystem(def);
}

/// Rigid body on so(3): h = sum mu_i^2 / (2 I_i) + S.
inline Observable rigid_body_energy(const Vector& inertia)
{
    return Observable(
        [inertia](const Vector& x) { return 0.5 * x.head(3).cwiseAbs2().cwiseQuotient(inertia).sum() + x[3]; },
        [inertia](const Vector& x) {
            Vector g(4);
            g << x.head(3).cwiseQuotient(inertia), 1.0;
            return g;
        });
}

inline ReducedSystem rigid_body(ReducedFriction friction, const Vector& inertia = vec({1, 2, 3}))
{
    ReducedDefinition def;
    def.name = "rigid_body";
    def.algebra = LieAlgebra::so3();
    def.hamiltonian = rigid_body_energy(inertia);
    def.friction = std::move(friction);
    def.casimirs = {so3_casimir(ReducedLayout{3, 0})};
    return ReducedSystem(def);
}

inline Matrix hat(const Vector& a)
{
    Matrix m(3, 3);
    m << 0, -a[2], a[1], a[2], 0, -a[0], -a[1], a[0], 0;
    return m;
}

/// so(3) acting on R^3 by B(n) xi = xi x n, h = 1/2 |mu|^2 + 1/2 |n|^2 + n_3 + S.
inline ReducedSystem rotating_vector(ReducedFriction friction)
{
    ReducedDefinition def;
    def.name = "rotating_vector";
    def.algebra = LieAlgebra::so3();
    def.m = 3;
    def.hamiltonian = Observable(
        [](const Vector& x) { return 0.5 * x.head(3).squaredNorm() + 0.5 * x.segment(3, 3).squaredNorm() + x[5] + x[6]; },
        [](const Vector& x) {
            Vector g(7);
            g << x.head(3), x.segment(3, 3) + vec({0, 0, 1}), 1.0;
            return g;
        });
    def.generator = [](const Vector& n) -> Matrix { return -hat(n); };
    def.friction = std::move(friction);
    return ReducedSystem(def);
}

}  // namespace testsys
