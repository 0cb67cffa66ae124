#include <doctest.h>

#include "metriplex/errors.hpp"
#include "metriplex/scenarios.hpp"
#include "support.hpp"

using namespace metriplex;
using testsys::vec;

TEST_CASE("fd gradient of a constant is zero")
{
    const Vector g = fd_gradient([](const Vector&) { return 4.2; }, vec({1.0, -3.0, 0.5}));
    CHECK(g.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fd gradient of p^2/2 at p = 2")
{
    const Vector g = fd_gradient([](const Vector& x) { return 0.5 * x[1] * x[1]; }, vec({0.3, 2.0, 0.0}));
    CHECK(std::abs(g[1] - 2.0) <= 1e-8);
    CHECK(std::abs(g[0]) <= 1e-8);
}

TEST_CASE("fd gradient of q p S at (1, 2, 3) matches the hand gradient")
{
    const Vector g = fd_gradient([](const Vector& x) { return x[0] * x[1] * x[2]; }, vec({1, 2, 3}));
    const Vector expected = vec({6, 3, 2});
    CHECK((g - expected).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("fd gradient names the coordinate that produced a non-finite value")
{
    const ScalarMap f = [](const Vector& x) { return std::log(x[1]); };
    try {
        fd_gradient(f, vec({1.0, 1e-7}));  // the step in x_1 crosses zero
        FAIL("expected NonFiniteEvaluation");
    } catch (const NonFiniteEvaluation& e) {
        CHECK(e.coordinate() == 1);
    }
}

TEST_CASE("observable algebra carries analytic gradients")
{
    Rng rng(7);
    const Observable f = Observable::random_quadratic(rng, 4);
    const Observable g = Observable::random_quadratic(rng, 4);
    const Vector x = rng.uniform_vector(4, -1.0, 1.0);
    CHECK((f * g).mode() == GradientMode::Analytic);
    CHECK(gradient_relative_error(f * g, x) <= 1e-8);
    CHECK(gradient_relative_error(f + 2.0 * g, x) <= 1e-8);
    CHECK((f * g)(x) == doctest::Approx(f(x) * g(x)));
    CHECK(f.without_gradient().mode() == GradientMode::FiniteDifference);

    const Observable q = Observable::quadratic(1.0, vec({1, 0}), (Matrix(2, 2) << 2, 1, 3, 0).finished());
    // A is symmetrized to [[2, 2], [2, 0]]
    CHECK((q.gradient(vec({1, 1})) - vec({5, 2})).norm() <= 1e-14);
}

TEST_CASE("Legendre transform of a mechanical Lagrangian")
{
    // L = 1/2 m v^2 - V(q) - U(S), m = 2, V = q^2/2, U = e^S
    constexpr double m = 2.0;
    LagrangianSystem lag;
    lag.layout = {1, 0};
    lag.lagrangian = Observable(
        [](const Vector& z) { return 0.5 * m * z[1] * z[1] - 0.5 * z[0] * z[0] - std::exp(z[2]); },
        [](const Vector& z) { return vec({-z[0], m * z[1], -std::exp(z[2])}); });
    const Vector x = vec({0.5, 4.0, 0.3});

    CHECK(std::abs(legendre_velocity(lag, x)[0] - 2.0) <= 1e-12);

    const HamiltonianSystem sys = legendre_to_hamiltonian(lag);
    const double expected = 4.0 * 4.0 / (2 * m) + 0.5 * 0.25 + std::exp(0.3);
    CHECK(std::abs(sys.hamiltonian()(x) - expected) <= 1e-12);

    const Vector dH = sys.hamiltonian().gradient(x);
    CHECK(std::abs(dH[1] - 2.0) <= 1e-12);  // dH/dp = v
    CHECK(std::abs(dH[0] - 0.5) <= 1e-12);  // dH/dq = -dL/dq
    // T = -dL/dS on the Lagrangian side equals dH/dS
    const double T_lagrangian = -lag.lagrangian.gradient(vec({0.5, 2.0, 0.3}))[2];
    CHECK(std::abs(dH[2] - T_lagrangian) <= 1e-12);
    CHECK(gradient_relative_error(sys.hamiltonian(), x) <= 1e-7);
}

TEST_CASE("Legendre transform at zero momentum")
{
    LagrangianSystem lag;
    lag.layout = {1, 0};
    lag.lagrangian = Observable([](const Vector& z) { return 0.5 * z[1] * z[1]; },
                                [](const Vector& z) { return vec({0.0, z[1], 0.0}); });
    const HamiltonianSystem sys = legendre_to_hamiltonian(lag);
    const Vector x = vec({0.7, 0.0, 0.1});
    CHECK(legendre_velocity(lag, x)[0] == 0.0);
    CHECK(sys.hamiltonian()(x) == 0.0);
}

TEST_CASE("Legendre transform fails on a degenerate Lagrangian")
{
    LagrangianSystem lag;
    lag.layout = {1, 0};
    lag.lagrangian = Observable([](const Vector& z) { return z[0] * z[1]; },
                                [](const Vector& z) { return vec({z[1], z[0], 0.0}); });
    CHECK_THROWS_AS(legendre_velocity(lag, vec({1.0, 2.0, 0.0})), HyperregularityFailure);
}

namespace {

HamiltonianSystem with_compartment_energy(Observable H)
{
    HamiltonianDefinition def;
    def.layout = {1, 2};
    def.hamiltonian = std::move(H);
    return HamiltonianSystem(def);
}

}  // namespace

TEST_CASE("chemical potentials are dH/dN")
{
    const Vector x = vec({0.0, 0.0, 0.0, 2.0, 1.0});

    const HamiltonianSystem linear =
        with_compartment_energy(Observable([](const Vector& y) { return y[2] + y[3] + 3 * y[4]; },
                                           [](const Vector&) { return vec({0, 0, 1, 1, 3}); }));
    CHECK((chemical_potentials(linear, x) - vec({1, 3})).norm() == 0.0);

    const HamiltonianSystem independent = with_compartment_energy(
        Observable([](const Vector& y) { return y[2]; }, [](const Vector&) { return vec({0, 0, 1, 0, 0}); }));
    CHECK(chemical_potentials(independent, x).norm() == 0.0);

    const HamiltonianSystem coupled = with_compartment_energy(
        Observable([](const Vector& y) { return y[2] + 0.5 * y[3] * y[3] + y[3] * y[4]; },
                   [](const Vector& y) { return vec({0, 0, 1, y[3] + y[4], y[3]}); }));
    CHECK((chemical_potentials(coupled, x) - vec({3, 2})).norm() <= 1e-15);

    CHECK_THROWS_AS(chemical_potentials(testsys::oscillator(1.0), vec({0, 0, 0})), NoCompartments);
}

TEST_CASE("system construction audits its inputs")
{
    HamiltonianDefinition def;
    def.layout = {1, 0};
    def.hamiltonian = Observable([](const Vector& x) { return x[1] * x[1]; },
                                 [](const Vector& x) { return vec({0.0, x[1], 0.0}); });  // wrong by a factor 2
    CHECK_THROWS_AS(HamiltonianSystem{def}, GradientMismatch);

    HamiltonianDefinition flux = testsys::two_compartments(1.0).definition();
    flux.linear_transport.reset();
    flux.flux = [](double, const Vector&, const Vector&) { return Matrix::Ones(2, 2); };
    CHECK_THROWS_AS(HamiltonianSystem{flux}, InvalidArgument);

    HamiltonianDefinition negative_g = testsys::two_compartments(1.0).definition();
    negative_g.flux = {};
    negative_g.linear_transport->conductances = [](double, const Vector&) { return Matrix::Constant(2, 2, -1.0); };
    CHECK_THROWS_AS(HamiltonianSystem{negative_g}, InvalidArgument);

    HamiltonianDefinition indefinite = testsys::oscillator(1.0).definition();
    indefinite.friction = {};
    indefinite.linear_transport->friction_coefficients = [](const Vector&, double) {
        return Matrix::Constant(1, 1, -0.5);
    };
    CHECK_THROWS_AS(HamiltonianSystem{indefinite}, InvalidArgument);

    HamiltonianDefinition inconsistent = testsys::oscillator(1.0).definition();
    inconsistent.friction = [](const Vector&, const Vector& v, double) -> Vector { return -2.0 * v; };
    CHECK_THROWS_AS(HamiltonianSystem{inconsistent}, InvalidArgument);

    HamiltonianDefinition bare;
    bare.layout = {1, 0};
    CHECK_THROWS_AS(HamiltonianSystem(bare).linear_transport(), MissingLinearTransport);
}

TEST_CASE("forces refuse a vanishing temperature")
{
    HamiltonianDefinition def;
    def.layout = {1, 0};
    def.hamiltonian = Observable([](const Vector& x) { return 0.5 * x[1] * x[1]; },
                                 [](const Vector& x) { return vec({0.0, x[1], 0.0}); });
    const HamiltonianSystem sys(def);
    CHECK_THROWS_AS(thermodynamic_forces(sys, vec({0.0, 1.0, 0.0})), ZeroTemperature);
}

TEST_CASE("built-in Hamiltonians have analytic gradients matching finite differences")
{
    for (const ScenarioInfo& info : scenario_catalog()) {
        CAPTURE(info.name);
        const Scenario s = build_scenario(info.name, info.name == "damped_oscillator_thermal"
                                                         ? ParameterMap{{"nonlinear_entropy", 1.0}}
                                                         : ParameterMap{});
        const Observable& H = s.is_reduced() ? s.reduced->hamiltonian() : s.system->hamiltonian();
        const StateBox& box = s.is_reduced() ? s.reduced->sample_box() : s.system->sample_box();
        Rng rng(11);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            worst = std::max(worst, gradient_relative_error(H, box.sample(rng)));
        }
        CHECK(worst <= 1e-5);
    }
}
