#include <doctest.h>

#include <numbers>
#include <sstream>

#include "metriplex/dynamics.hpp"
#include "metriplex/errors.hpp"
#include "metriplex/scenarios.hpp"
#include "support.hpp"

using namespace metriplex;
using testsys::vec;

TEST_CASE("reversible limit gives the canonical field with frozen S and N")
{
    HamiltonianDefinition def = testsys::two_compartments(0.0).definition();
    def.hamiltonian = Observable(
        [](const Vector& x) { return 0.5 * x[1] * x[1] + 0.5 * x[0] * x[0] + x[2] + x[3] * x[4]; },
        [](const Vector& x) { return vec({x[0], x[1], 1.0, x[4], x[3]}); });
    const HamiltonianSystem sys(def);
    const Vector x = vec({0.3, -0.4, 0.2, 1.5, 0.7});
    const Vector f = direct_vector_field(sys, x);
    CHECK((f - vec({-0.4, -0.3, 0.0, 0.0, 0.0})).norm() == 0.0);
    CHECK(entropy_production_rate(sys, x) == 0.0);
}

TEST_CASE("damped oscillator field at (q, p, S) = (0, 2, 0)")
{
    const HamiltonianSystem sys = testsys::oscillator(1.0);
    const Vector x = vec({0.0, 2.0, 0.0});
    // q' = v = 2, p' = -q - p = -2, S' = -(1/T) <F, v> = 4
    CHECK((direct_vector_field(sys, x) - vec({2, -2, 4})).norm() <= 1e-15);
    CHECK(entropy_production_rate(sys, x) == doctest::Approx(4.0));
}

TEST_CASE("two compartments with mu = (2, 1) and G = 1")
{
    const HamiltonianSystem sys = testsys::two_compartments(1.0);
    const Vector x = vec({0.0, 0.0, 0.0, 2.0, 1.0});
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    CHECK(f.flux(0, 1) == doctest::Approx(-1.0));  // flow from 2 into 1
    CHECK(f.flux(1, 0) == doctest::Approx(1.0));
    const Vector field = direct_vector_field(sys, x);
    CHECK((field.tail(2) - vec({-1, 1})).norm() <= 1e-15);
    CHECK(entropy_production_rate(sys, x) == doctest::Approx(1.0));
}

TEST_CASE("integrating a zero field leaves the state unchanged")
{
    const HamiltonianSystem sys = testsys::oscillator(0.0);
    const Vector x0 = vec({0.3, 0.1, 0.2});
    const Trajectory traj = integrate(sys, x0, {1e-2, 1.0, 10}, [](const Vector& x) { return Vector::Zero(x.size()); });
    for (const Vector& x : traj.states) CHECK(x == x0);
    CHECK(traj.size() == 11);
}

TEST_CASE("harmonic oscillator returns after one period")
{
    HamiltonianDefinition def;
    def.layout = {1, 0};
    def.hamiltonian = Observable([](const Vector& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]) + x[2]; },
                                 [](const Vector& x) { return vec({x[0], x[1], 1.0}); });
    const HamiltonianSystem sys(def);
    const Vector x0 = vec({1.0, 0.0, 0.0});
    IntegrationOptions opts;
    opts.h = 1e-3;
    opts.t_end = 2 * std::numbers::pi;
    opts.stride = 1000;
    const Trajectory traj = integrate(sys, x0, opts);
    CHECK(traj.times.back() == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
    CHECK((traj.states.back() - x0).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("damped thermal oscillator conserves H and produces entropy")
{
    const Scenario s = build_scenario("damped_oscillator_thermal");
    const Trajectory traj = integrate(*s.system, s.spec.initial_state, {1e-3, 10.0, 1});
    const double H0 = traj.energy.front();
    for (std::size_t i = 1; i < traj.size(); ++i) {
        REQUIRE(std::abs(traj.energy[i] - H0) / std::max(1.0, std::abs(H0)) <= 1e-7);
        // strictly increasing except where p passes through zero within a step
        REQUIRE(traj.entropy(i) >= traj.entropy(i - 1));
    }
    CHECK(traj.entropy(traj.size() - 1) > traj.entropy(0) + 0.1);
}

TEST_CASE("fourth-order energy error for a state-dependent temperature")
{
    const Scenario s = build_scenario("damped_oscillator_thermal", {{"nonlinear_entropy", 1.0}, {"lambda", 1.0}});
    auto drift = [&](double h) {
        const Trajectory t = integrate(*s.system, s.spec.initial_state, {h, 2.0, 1});
        double d = 0.0;
        for (double e : t.energy) d = std::max(d, std::abs(e - t.energy.front()));
        return d;
    };
    const double coarse = drift(0.1);
    const double fine = drift(0.05);
    CHECK(coarse > 1e-12);
    CHECK(coarse / fine > 10.0);  // order 4 gives 16
    CHECK(drift(1e-3) <= 1e-6);
}

TEST_CASE("step counting and recording")
{
    CHECK(step_count(10.0, 1e-3) == 10000);
    CHECK(step_count(2 * std::numbers::pi, 1e-3) == 6284);  // last step shortened
    CHECK_THROWS_AS(step_count(1.0, 0.0), InvalidArgument);

    const Scenario s = build_scenario("damped_oscillator_thermal");
    const Trajectory t = integrate(*s.system, s.spec.initial_state, {0.1, 1.05, 3});
    CHECK(t.times.back() == doctest::Approx(1.05));
    CHECK(t.times[1] == doctest::Approx(0.3));
    CHECK(t.states.size() == t.energy.size());
    CHECK(t.states.size() == t.temperature.size());
}

TEST_CASE("trajectory CSV columns")
{
    const Scenario s = build_scenario("compartment_diffusion");
    const Trajectory t = integrate(*s.system, s.spec.initial_state, {0.1, 0.2, 1});
    const std::vector<std::string> expected{"t",   "q_1", "p_1", "S",     "N_1", "N_2",
                                            "H",   "T",   "sigma", "W_1", "W_2", "totalN"};
    CHECK(t.csv_header() == expected);
    std::ostringstream os;
    t.write_csv(os);
    std::istringstream is(os.str());
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 11);
        ++rows;
    }
    CHECK(rows == 4);
    CHECK(t.displacements.front().norm() == 0.0);
    // W_1' = mu_1 = N_1 > 0
    CHECK(t.displacements.back()[0] > 0.0);
}

TEST_CASE("integration errors")
{
    const Scenario s = build_scenario("damped_oscillator_thermal");
    CHECK_THROWS_AS(integrate(*s.system, s.spec.initial_state, {20.0, 2000.0, 1}), DivergedAt);

    const Scenario anti = build_scenario("compartment_diffusion", {}, BuildOptions{true});
    IntegrationOptions abort;
    abort.h = 1e-2;
    abort.t_end = 1.0;
    abort.moles = MolePolicy::Abort;
    CHECK_THROWS_AS(integrate(*anti.system, anti.spec.initial_state, abort), NegativeMoles);
    abort.moles = MolePolicy::Warn;
    CHECK_FALSE(integrate(*anti.system, anti.spec.initial_state, abort).warnings.empty());

    HamiltonianDefinition cold = testsys::oscillator(1.0).definition();
    cold.hamiltonian = Observable([](const Vector& x) { return 0.5 * x[1] * x[1] + 0.5 * x[2] * x[2]; },
                                  [](const Vector& x) { return vec({0.0, x[1], x[2]}); });
    const HamiltonianSystem cold_sys(cold);
    try {
        integrate(cold_sys, vec({0.0, 1.0, 0.0}), {1e-2, 1.0, 1});
        FAIL("expected ZeroTemperature");
    } catch (const ZeroTemperature& e) {
        REQUIRE(e.time().has_value());
        CHECK(*e.time() == 0.0);
    }
}

TEST_CASE("admissibility audit")
{
    std::vector<Vector> states;
    Rng rng(3);
    const HamiltonianSystem linear = testsys::oscillator(0.7);
    for (int i = 0; i < 20; ++i) states.push_back(linear.sample_box().sample(rng));

    const AdmissibilityReport ok = admissibility_audit(linear, states);
    CHECK(ok.pass);
    CHECK(ok.max_friction_power <= 0.0);

    HamiltonianDefinition def = testsys::oscillator(0.0).definition();
    def.linear_transport.reset();
    def.friction = [](const Vector&, const Vector& v, double) -> Vector { return v; };
    const AdmissibilityReport bad = admissibility_audit(HamiltonianSystem(def), states);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_friction_power > 0.0);

    HamiltonianDefinition none = testsys::oscillator(0.0).definition();
    none.linear_transport.reset();
    const AdmissibilityReport zero = admissibility_audit(HamiltonianSystem(none), states);
    CHECK(zero.pass);
    CHECK(zero.max_friction_power == 0.0);
    CHECK(zero.max_flux_power == 0.0);

    const HamiltonianSystem diffusion = testsys::two_compartments(2.0);
    std::vector<Vector> comp;
    for (int i = 0; i < 20; ++i) comp.push_back(diffusion.sample_box().sample(rng));
    CHECK(admissibility_audit(diffusion, comp).pass);
}
