// Acceptance gate: one PASS/FAIL line per criterion. Thresholds are pinned
// here, independently of the library defaults.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "metriplex/run.hpp"

using namespace metriplex;

namespace {

constexpr std::uint64_t seed = 20261017;
constexpr int n_states = 100;
constexpr int n_observables = 20;

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::string detail;
};

/// Worst residual of the named check over the reports; records a failure when absent.
struct Gate {
    Criterion& c;
    std::ostringstream detail;

    void at_most(const std::vector<VerificationReport>& reports, const std::string& name, double limit)
    {
        double worst = 0.0;
        bool seen = false;
        for (const VerificationReport& r : reports) {
            if (const CheckResult* cr = r.find(name)) {
                seen = true;
                worst = std::isnan(cr->residual) ? cr->residual : std::max(worst, cr->residual);
            }
        }
        const bool ok = seen && worst <= limit;
        if (!ok) c.pass = false;
        detail << " " << name << "=" << (seen ? worst : NAN) << (ok ? "" : "(!)");
    }

    /// Sign checks store max(0, -value); value >= -limit iff residual <= limit.
    void at_least(const std::vector<VerificationReport>& reports, const std::string& name, double limit)
    {
        at_most(reports, name, limit);
    }

    void require(bool ok, const std::string& what)
    {
        if (!ok) c.pass = false;
        detail << " " << what << (ok ? "" : "(!)");
    }
};

struct Fixture {
    std::vector<Scenario> scenarios;
    std::vector<VerificationReport> axioms;
    std::vector<VerificationReport> equivalence;
    double axiom_seconds = 0.0;
};

Fixture build()
{
    Fixture f;
    for (const ScenarioInfo& info : scenario_catalog()) f.scenarios.push_back(build_scenario(info.name));
    const auto start = std::chrono::steady_clock::now();
    for (const Scenario& s : f.scenarios) {
        const AxiomOptions opts{n_states, n_observables, seed};
        f.axioms.push_back(s.is_reduced() ? check_axioms(*s.reduced, opts) : check_axioms(*s.system, opts));
    }
    f.axiom_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const Scenario& s : f.scenarios) {
        f.equivalence.push_back(s.is_reduced() ? check_equivalence(*s.reduced, n_states, seed)
                                               : check_equivalence(*s.system, n_states, seed));
    }
    return f;
}

void degeneracy(const Fixture& f, Criterion& c)
{
    Gate g{c, {}};
    for (const char* name : {"poisson.H_S_commute", "single.H_H", "double.H_S", "metriplectic.H_G",
                             "lie_poisson.h_S_commute", "reduced_single.h_h", "reduced_double.h_S",
                             "reduced_metriplectic.h_g", "orbit_metriplectic.h_g"}) {
        g.at_most(f.axioms, name, 1e-10);
    }
    g.at_most(f.axioms, "state.temperature_floor", 0.0);
    std::ostringstream t;
    t << "runtime=" << f.axiom_seconds << "s";
    g.require(f.axiom_seconds < 10.0, t.str());
    c.detail = g.detail.str();
}

void signs(const Fixture& f, Criterion& c)
{
    Gate g{c, {}};
    for (const char* name : {"single.S_H_sign", "double.S_S_sign", "reduced_single.S_h_sign", "reduced_double.S_S_sign"}) {
        g.at_least(f.axioms, name, 1e-12);
    }
    for (const char* name : {"metriplectic.G_G_sign", "reduced_metriplectic.g_g_sign", "orbit_metriplectic.g_g_sign"}) {
        g.at_least(f.axioms, name, 1e-10);
    }
    c.detail = g.detail.str();
}

void algebra(const Fixture& f, Criterion& c)
{
    Gate g{c, {}};
    g.at_most(f.axioms, "double.symmetry", 1e-12);
    g.at_most(f.axioms, "reduced_double.symmetry", 1e-12);
    for (const char* name : {"double.leibniz", "single.leibniz", "metriplectic.leibniz", "reduced_double.leibniz",
                             "reduced_single.leibniz"}) {
        g.at_most(f.axioms, name, 1e-9);
    }
    for (const char* name : {"double.bilinearity", "metriplectic.bilinearity", "reduced_double.bilinearity",
                             "single.linearity", "reduced_single.linearity"}) {
        g.at_most(f.axioms, name, 1e-10);
    }
    c.detail = g.detail.str();
}

void equivalence(const Fixture& f, Criterion& c)
{
    Gate g{c, {}};
    for (const char* name :
         {"equivalence.single", "equivalence.double", "equivalence.metriplectic", "equivalence.orbit_metriplectic"}) {
        g.at_most(f.equivalence, name, 1e-9);
    }
    g.at_most(f.equivalence, "equivalence.temperature_floor", 0.0);
    for (std::size_t i = 0; i < f.scenarios.size(); ++i) {
        // every scenario must contribute all three formulations it supports
        const bool ok = f.equivalence[i].find("equivalence.single") && f.equivalence[i].find("equivalence.double");
        g.require(ok, f.scenarios[i].spec.name + ":covered");
    }
    c.detail = g.detail.str();
}

void laws(const Fixture& f, Criterion& c)
{
    Gate g{c, {}};
    const IntegrationOptions opts{1e-3, 10.0, 1};
    std::vector<VerificationReport> mech;
    for (const Scenario& s : f.scenarios) {
        if (s.spec.name == "compartment_diffusion") continue;
        mech.push_back(s.is_reduced() ? check_laws(integrate_reduced(*s.reduced, s.spec.initial_state, opts))
                                      : check_laws(integrate(*s.system, s.spec.initial_state, opts)));
    }
    g.at_most(mech, "laws.energy_drift", 1e-6);
    g.at_most(mech, "laws.entropy_decrement", 1e-9);
    const Scenario diff = build_scenario("compartment_diffusion");
    g.at_most({check_laws(integrate(*diff.system, diff.spec.initial_state, opts))}, "laws.mole_drift", 1e-9);
    c.detail = g.detail.str();
}

void compartments(Criterion& c)
{
    Gate g{c, {}};
    const Scenario s = build_scenario("compartment_diffusion", {{"K", 2}, {"G", 1}, {"c", 1}, {"N0_1", 2}, {"N0_2", 0}});
    const Trajectory t = integrate(*s.system, s.spec.initial_state, {1e-3, 5.0, 1});
    const Index n1 = s.system->layout().N();
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        worst = std::max(worst, std::abs(t.states[i][n1] - (1.0 + std::exp(-2.0 * t.times[i]))));
    }
    std::ostringstream d;
    d << "max|N1-(1+exp(-2t))|=" << worst;
    g.require(worst <= 1e-6, d.str());
    const Trajectory eq = integrate(*s.system, s.spec.initial_state, {1e-3, 20.0, 1000});
    const Vector N = eq.states.back().segment(n1, 2);
    d.str("");
    d << "N(20)=(" << N[0] << "," << N[1] << ")";
    g.require(std::abs(N[0] - 1.0) <= 1e-12 && std::abs(N[1] - 1.0) <= 1e-12, d.str());
    c.detail = g.detail.str();
}

void orbits(Criterion& c)
{
    Gate g{c, {}};
    const IntegrationOptions opts{1e-3, 10.0, 1};
    const Scenario db = build_scenario("rigid_body_double_bracket");
    const ReducedTrajectory tdb = integrate_reduced(*db.reduced, db.spec.initial_state, opts);
    g.at_most({check_casimirs(tdb, db.reduced->casimirs(), 1e-8)}, "casimir.drift", 1e-8);

    const Scenario lf = build_scenario("rigid_body_linear_friction");
    const ReducedTrajectory tlf = integrate_reduced(*lf.reduced, lf.spec.initial_state, opts);
    const double decrease = tlf.casimir_values.front()[0] - tlf.casimir_values.back()[0];
    std::ostringstream d;
    d << "linear_friction_decrease=" << decrease;
    g.require(decrease > 1e-2, d.str());
    c.detail = g.detail.str();
}

void jacobi(Criterion& c)
{
    Gate g{c, {}};
    const StateLayout l{2, 2};
    const VerificationReport canonical = check_jacobi(canonical_poisson(l.n, l.K), StateBox::standard(l), seed, 5, 1e-6);
    const Scenario rb = build_scenario("rigid_body_linear_friction");
    const VerificationReport so3 = check_jacobi(rb.reduced->poisson(), rb.reduced->sample_box(), seed, 5, 1e-6);
    g.at_most({canonical}, "jacobi.residual", 1e-6);
    g.at_most({so3}, "jacobi.residual", 1e-6);

    // [e1, e2] = e3 + e1 instead of e3
    std::vector<Matrix> consts = LieAlgebra::so3().structure_constants();
    consts[0](0, 1) = 1.0;
    consts[0](1, 0) = -1.0;
    ReducedDefinition def;
    def.name = "corrupted";
    def.algebra = LieAlgebra("corrupted", consts, LieAlgebra::Validation::Skip);
    def.hamiltonian = Observable([](const Vector& x) { return x[3]; },
                                 [](const Vector&) { return Vector(Vector::Unit(4, 3)); });
    const ReducedSystem broken(def);
    const double r = check_jacobi(broken.poisson(), broken.sample_box(), seed, 5, 1e-6).at("jacobi.residual").residual;
    std::ostringstream d;
    d << "corrupted=" << r;
    g.require(r > 1e-2, d.str());
    c.detail = g.detail.str();
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void determinism(Criterion& c)
{
    Gate g{c, {}};
    const auto root = std::filesystem::temp_directory_path() / "metriplex_acceptance";
    std::filesystem::remove_all(root);
    std::vector<std::string> reports;
    for (const char* run_dir : {"a", "b"}) {
        RunConfig cfg;
        cfg.scenario = "damped_oscillator_thermal";
        cfg.seed = seed;
        cfg.out = root / run_dir;
        std::ostringstream log;
        const RunResult r = run(cfg, log);
        g.require(r.exit_code == exit_pass, std::string("run_") + run_dir + "_exit=" + std::to_string(r.exit_code));
        reports.push_back(slurp(cfg.out / "report.json"));
    }
    g.require(!reports[0].empty() && reports[0] == reports[1], "report.json identical");
    c.detail = g.detail.str();
}

}  // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "degeneracy ledger"},
        {2, "sign ledger"},
        {3, "symmetry / bilinearity / Leibniz"},
        {4, "formulation equivalence"},
        {5, "first and second laws"},
        {6, "compartment equilibrium (closed form)"},
        {7, "orbit preservation"},
        {8, "Jacobi residuals"},
        {9, "determinism"},
    };

    Fixture fixture;
    std::string fixture_error;
    try {
        fixture = build();
    } catch (const std::exception& e) {
        fixture_error = e.what();
    }

    const std::vector<std::function<void(Criterion&)>> bodies{
        [&](Criterion& c) { degeneracy(fixture, c); },
        [&](Criterion& c) { signs(fixture, c); },
        [&](Criterion& c) { algebra(fixture, c); },
        [&](Criterion& c) { equivalence(fixture, c); },
        [&](Criterion& c) { laws(fixture, c); },
        compartments,
        orbits,
        jacobi,
        determinism,
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion& c = criteria[i];
        try {
            if (i < 4 && !fixture_error.empty()) throw std::runtime_error(fixture_error);
            bodies[i](c);
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string(" exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s |%s\n", c.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), c.detail.c_str());
        failed += c.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
