#include "metriplex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "metriplex/brackets.hpp"
#include "metriplex/errors.hpp"

namespace metriplex {

void VerificationReport::record(std::string name, double residual, double threshold, Vector worst_state)
{
    if (find(name) != nullptr) {
        throw InvalidArgument("duplicate check '" + name + "'");
    }
    CheckResult r;
    r.name = std::move(name);
    r.residual = residual;
    r.threshold = threshold;
    r.pass = std::isfinite(residual) && residual <= threshold;
    r.worst_state = std::move(worst_state);
    checks.push_back(std::move(r));
}

void VerificationReport::merge(const VerificationReport& other)
{
    for (const CheckResult& c : other.checks) {
        record(c.name, c.residual, c.threshold, c.worst_state);
    }
}

bool VerificationReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(std::string_view name) const
{
    auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
}

const CheckResult& VerificationReport::at(std::string_view name) const
{
    const CheckResult* c = find(name);
    if (c == nullptr) {
        throw InvalidArgument("report has no check '" + std::string(name) + "'");
    }
    return *c;
}

Tolerances Tolerances::for_mode(GradientMode mode)
{
    Tolerances t;
    if (mode == GradientMode::FiniteDifference) {
        // differentials carry O(1e-10) truncation error; products of them more
        t.leibniz = 1e-6;
        t.bilinearity = 1e-6;
        t.identity = 1e-6;
        t.equivalence = 1e-5;
    }
    return t;
}

namespace {

/// Running maximum of one check's residual and the state where it occurred.
class Ledger {
public:
    void update(const std::string& name, double residual, const Vector& x)
    {
        Entry& e = entries_[name];
        if (std::isnan(e.worst)) {
            return;
        }
        if (!e.seen || std::isnan(residual) || residual > e.worst) {
            e.worst = residual;
            e.state = x;
        }
        e.seen = true;
    }

    /// Sign check: residual is the amount by which `value` falls below zero.
    void at_least_zero(const std::string& name, double value, const Vector& x)
    {
        update(name, std::max(0.0, -value), x);
    }

    void emit(VerificationReport& report, const std::vector<std::pair<std::string, double>>& thresholds) const
    {
        for (const auto& [name, threshold] : thresholds) {
            auto it = entries_.find(name);
            if (it == entries_.end()) {
                report.record(name, 0.0, threshold);
            } else {
                report.record(name, it->second.worst, threshold, it->second.state);
            }
        }
    }

private:
    struct Entry {
        double worst = 0.0;
        Vector state;
        bool seen = false;
    };
    std::map<std::string, Entry> entries_;
};

std::vector<Observable> random_observables(Rng& rng, Index dim, int count)
{
    std::vector<Observable> obs;
    obs.reserve(static_cast<std::size_t>(std::max(count, 3)));
    for (int i = 0; i < std::max(count, 3); ++i) {
        obs.push_back(Observable::random_quadratic(rng, dim));
    }
    return obs;
}

std::vector<Vector> sample_states(Rng& rng, const StateBox& box, int count)
{
    std::vector<Vector> states;
    for (int i = 0; i < count; ++i) {
        states.push_back(box.sample(rng));
    }
    return states;
}

/// Differentials of F, G, E, FG and aF + bG at one point, plus the values.
struct Triple {
    double F = 0, G = 0, a = 0, b = 0;
    Vector dF, dG, dE, dFG, dLin;
};

Triple make_triple(const std::vector<Observable>& obs, std::size_t j, const Vector& x, Rng& rng)
{
    const Observable& F = obs[j];
    const Observable& G = obs[(j + 1) % obs.size()];
    const Observable& E = obs[(j + 2) % obs.size()];
    Triple t;
    t.F = F(x);
    t.G = G(x);
    t.dF = F.gradient(x);
    t.dG = G.gradient(x);
    t.dE = E.gradient(x);
    t.dFG = t.F * t.dG + t.G * t.dF;
    t.a = rng.uniform(-1.0, 1.0);
    t.b = rng.uniform(-1.0, 1.0);
    t.dLin = t.a * t.dF + t.b * t.dG;
    return t;
}

double max_abs_diff(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::vector<std::pair<std::string, double>> unreduced_thresholds(const HamiltonianSystem& sys, const Tolerances& t)
{
    std::vector<std::pair<std::string, double>> th{
        {"state.temperature_floor", 0.0},
        {"poisson.antisymmetry", t.antisymmetry},
        {"poisson.leibniz", t.leibniz},
        {"poisson.H_S_commute", t.identity},
        {"poisson.G_S_commute", t.identity},
        {"single.H_H", t.identity},
        {"single.S_H_sign", t.sign},
        {"single.leibniz", t.leibniz},
        {"single.linearity", t.bilinearity},
        {"single.field_consistency", t.identity},
        {"double.symmetry", t.antisymmetry},
        {"double.H_S", t.identity},
        {"double.S_S_sign", t.sign},
        {"double.leibniz", t.leibniz},
        {"double.bilinearity", t.bilinearity},
        {"double.F_S_equals_single", t.identity},
        {"double.K_symmetry", t.antisymmetry},
        {"dynamics.entropy_rate_consistency", t.identity},
        {"second_law.friction_power", AdmissibilityReport::threshold},
        {"second_law.flux_power", AdmissibilityReport::threshold},
    };
    if (sys.has_linear_transport()) {
        th.insert(th.end(), {
                                {"metriplectic.symmetry", t.antisymmetry},
                                {"metriplectic.H_G", t.identity},
                                {"metriplectic.G_G_sign", t.metric_sign},
                                {"metriplectic.S_S_equals_entropy_production", t.identity},
                                {"metriplectic.leibniz", t.leibniz},
                                {"metriplectic.bilinearity", t.bilinearity},
                            });
    }
    return th;
}

std::vector<std::pair<std::string, double>> reduced_thresholds(const ReducedSystem& sys, const Tolerances& t)
{
    std::vector<std::pair<std::string, double>> th{
        {"state.temperature_floor", 0.0},
        {"lie_poisson.antisymmetry", t.antisymmetry},
        {"lie_poisson.leibniz", t.leibniz},
        {"lie_poisson.h_S_commute", t.identity},
        {"reduced_single.h_h", t.identity},
        {"reduced_single.S_h_sign", t.sign},
        {"reduced_single.leibniz", t.leibniz},
        {"reduced_single.linearity", t.bilinearity},
        {"reduced_double.symmetry", t.antisymmetry},
        {"reduced_double.h_S", t.identity},
        {"reduced_double.S_S_sign", t.sign},
        {"reduced_double.leibniz", t.leibniz},
        {"reduced_double.bilinearity", t.bilinearity},
        {"reduced_double.f_S_equals_single", t.identity},
        {"second_law.reduced_friction_power", t.sign},
    };
    if (!sys.casimirs().empty()) {
        th.emplace_back("lie_poisson.casimir", t.identity);
    }
    if (sys.friction().kind == ReducedFriction::Kind::Linear) {
        th.insert(th.end(), {
                                {"reduced_metriplectic.symmetry", t.antisymmetry},
                                {"reduced_metriplectic.h_g", t.identity},
                                {"reduced_metriplectic.g_g_sign", t.metric_sign},
                                {"reduced_metriplectic.S_S_equals_entropy_production", t.identity},
                            });
    }
    if (sys.orbit_preserving()) {
        th.insert(th.end(), {
                                {"orbit_metriplectic.symmetry", t.orbit_symmetry},
                                {"orbit_metriplectic.h_g", t.identity},
                                {"orbit_metriplectic.g_g_sign", t.metric_sign},
                                {"orbit_metriplectic.S_S_equals_entropy_production", t.identity},
                            });
        if (!sys.casimirs().empty()) {
            th.insert(th.end(), {
                                    {"orbit_metriplectic.casimir_row", t.identity},
                                    {"double_bracket.casimir_orthogonality", t.antisymmetry},
                                });
        }
    }
    return th;
}

void require_complete(const VerificationReport& report, const std::vector<std::string>& expected)
{
    for (const std::string& name : expected) {
        if (report.find(name) == nullptr) {
            throw Error("verification ledger is missing check '" + name + "'");
        }
        if (find_check(name) == nullptr) {
            throw Error("check '" + name + "' is not in the catalog");
        }
    }
}

}  // namespace

std::vector<std::string> expected_axiom_checks(const HamiltonianSystem& sys)
{
    std::vector<std::string> names;
    for (const auto& [name, threshold] : unreduced_thresholds(sys, Tolerances{})) names.push_back(name);
    return names;
}

std::vector<std::string> expected_axiom_checks(const ReducedSystem& sys)
{
    std::vector<std::string> names;
    for (const auto& [name, threshold] : reduced_thresholds(sys, Tolerances{})) names.push_back(name);
    return names;
}

VerificationReport check_axioms(const HamiltonianSystem& sys, const AxiomOptions& options)
{
    const StateLayout& l = sys.layout();
    const Tolerances tol = Tolerances::for_mode(sys.gradient_mode());
    Rng rng(options.seed);
    const std::vector<Observable> obs = random_observables(rng, l.dim(), options.n_observables);
    const std::vector<Vector> states = sample_states(rng, sys.sample_box(), options.n_states);
    const PoissonStructure poisson = canonical_poisson(l.n, l.K);
    const Vector dS = Vector::Unit(l.dim(), l.S());
    const bool linear = sys.has_linear_transport();

    Ledger ledger;
    int cold_states = 0;
    for (const Vector& x : states) {
        const Vector dH = sys.hamiltonian().gradient(x);
        ledger.update("poisson.H_S_commute", std::abs(poisson.evaluate(dH, dS, x)), x);
        for (std::size_t j = 0; j < obs.size(); ++j) {
            const Triple t = make_triple(obs, j, x, rng);
            ledger.update("poisson.antisymmetry",
                          std::abs(poisson.evaluate(t.dF, t.dG, x) + poisson.evaluate(t.dG, t.dF, x)), x);
            ledger.update("poisson.G_S_commute", std::abs(poisson.evaluate(t.dG, dS, x)), x);
            ledger.update("poisson.leibniz",
                          std::abs(poisson.evaluate(t.dFG, t.dE, x) - t.F * poisson.evaluate(t.dG, t.dE, x)
                                   - t.G * poisson.evaluate(t.dF, t.dE, x)),
                          x);
        }

        ThermodynamicForces f;
        try {
            f = thermodynamic_forces(sys, x);
        } catch (const ZeroTemperature&) {
            ++cold_states;
            ledger.update("state.temperature_floor", static_cast<double>(cold_states), x);
            continue;
        }
        auto single = [&](const Vector& d) { return single_generator_bracket(l, f, d); };
        auto dbl = [&](const Vector& a, const Vector& b) { return double_generator_bracket(l, f, a, b); };

        ledger.update("single.H_H", std::abs(single(dH)), x);
        ledger.at_least_zero("single.S_H_sign", single(dS), x);
        ledger.update("double.H_S", std::abs(dbl(dH, dS)), x);
        ledger.at_least_zero("double.S_S_sign", dbl(dS, dS), x);
        ledger.update("double.K_symmetry", dissipative_field_double(sys, x).symmetry_defect, x);
        const double sdot = entropy_production_rate(sys, x);
        ledger.update("dynamics.entropy_rate_consistency", std::abs(sdot - direct_vector_field(sys, x)[l.S()]), x);
        const Vector D = dissipative_field_single(sys, x);

        LinearCoefficients coeffs;
        if (linear) {
            coeffs = linear_coefficients(sys, x);
        }
        auto met = [&](const Vector& a, const Vector& b) { return metriplectic_bracket(l, f, coeffs, a, b); };
        if (linear) {
            ledger.update("metriplectic.S_S_equals_entropy_production", std::abs(met(dS, dS) - sdot), x);
        }

        for (std::size_t j = 0; j < obs.size(); ++j) {
            const Triple t = make_triple(obs, j, x, rng);
            ledger.update("single.leibniz", std::abs(single(t.dFG) - t.F * single(t.dG) - t.G * single(t.dF)), x);
            ledger.update("single.linearity", std::abs(single(t.dLin) - t.a * single(t.dF) - t.b * single(t.dG)), x);
            ledger.update("single.field_consistency", std::abs(t.dF.dot(D) - single(t.dF)), x);
            ledger.update("double.symmetry", std::abs(dbl(t.dF, t.dG) - dbl(t.dG, t.dF)), x);
            ledger.update("double.leibniz",
                          std::abs(dbl(t.dFG, t.dE) - t.F * dbl(t.dG, t.dE) - t.G * dbl(t.dF, t.dE)), x);
            ledger.update("double.bilinearity",
                          std::abs(dbl(t.dLin, t.dE) - t.a * dbl(t.dF, t.dE) - t.b * dbl(t.dG, t.dE)), x);
            ledger.update("double.F_S_equals_single", std::abs(dbl(t.dF, dS) - single(t.dF)), x);
            if (linear) {
                ledger.update("metriplectic.symmetry", std::abs(met(t.dF, t.dG) - met(t.dG, t.dF)), x);
                ledger.update("metriplectic.H_G", std::abs(met(dH, t.dG)), x);
                ledger.at_least_zero("metriplectic.G_G_sign", met(t.dG, t.dG), x);
                ledger.update("metriplectic.leibniz",
                              std::abs(met(t.dFG, t.dE) - t.F * met(t.dG, t.dE) - t.G * met(t.dF, t.dE)), x);
                ledger.update("metriplectic.bilinearity",
                              std::abs(met(t.dLin, t.dE) - t.a * met(t.dF, t.dE) - t.b * met(t.dG, t.dE)), x);
            }
        }
    }

    const AdmissibilityReport adm = admissibility_audit(sys, states);
    ledger.update("second_law.friction_power", std::max(0.0, adm.max_friction_power), adm.worst_friction_state);
    ledger.update("second_law.flux_power", std::max(0.0, adm.max_flux_power), adm.worst_flux_state);

    VerificationReport report;
    report.seed = options.seed;
    report.system = sys.name();
    report.gradient_mode = to_string(sys.gradient_mode());
    ledger.emit(report, unreduced_thresholds(sys, tol));
    require_complete(report, expected_axiom_checks(sys));
    return report;
}

VerificationReport check_axioms(const ReducedSystem& sys, const AxiomOptions& options)
{
    const ReducedLayout l = sys.layout();
    const Tolerances tol = Tolerances::for_mode(sys.gradient_mode());
    Rng rng(options.seed);
    const std::vector<Observable> obs = random_observables(rng, l.dim(), options.n_observables);
    const std::vector<Vector> states = sample_states(rng, sys.sample_box(), options.n_states);
    const PoissonStructure poisson = sys.poisson();
    const Vector dS = Vector::Unit(l.dim(), l.S());
    const bool linear = sys.friction().kind == ReducedFriction::Kind::Linear;
    const bool orbit = sys.orbit_preserving();

    Ledger ledger;
    int cold_states = 0;
    for (const Vector& x : states) {
        const Vector dh = sys.hamiltonian().gradient(x);
        ledger.update("lie_poisson.h_S_commute", std::abs(poisson.evaluate(dh, dS, x)), x);
        for (std::size_t j = 0; j < obs.size(); ++j) {
            const Triple t = make_triple(obs, j, x, rng);
            ledger.update("lie_poisson.antisymmetry",
                          std::abs(poisson.evaluate(t.dF, t.dG, x) + poisson.evaluate(t.dG, t.dF, x)), x);
            ledger.update("lie_poisson.leibniz",
                          std::abs(poisson.evaluate(t.dFG, t.dE, x) - t.F * poisson.evaluate(t.dG, t.dE, x)
                                   - t.G * poisson.evaluate(t.dF, t.dE, x)),
                          x);
            for (const Casimir& c : sys.casimirs()) {
                ledger.update("lie_poisson.casimir", std::abs(poisson.evaluate(c.function.gradient(x), t.dG, x)), x);
            }
        }

        ReducedForces f;
        try {
            f = reduced_forces(sys, x);
        } catch (const ZeroTemperature&) {
            ++cold_states;
            ledger.update("state.temperature_floor", static_cast<double>(cold_states), x);
            continue;
        }
        auto single = [&](const Vector& d) { return reduced_single_bracket(l, f, d); };
        auto dbl = [&](const Vector& a, const Vector& b) { return reduced_double_bracket(l, f, a, b); };
        const double sdot = -f.power / f.T;

        ledger.update("reduced_single.h_h", std::abs(single(dh)), x);
        ledger.at_least_zero("reduced_single.S_h_sign", single(dS), x);
        ledger.update("reduced_double.h_S", std::abs(dbl(dh, dS)), x);
        ledger.at_least_zero("reduced_double.S_S_sign", dbl(dS, dS), x);
        ledger.update("second_law.reduced_friction_power", std::max(0.0, f.power), x);

        Matrix gamma;
        if (linear) {
            gamma = sys.friction().gamma(l.n_of(x), l.S_of(x));
        }
        auto met = [&](const Vector& a, const Vector& b) { return reduced_metriplectic_bracket(l, f, gamma, a, b); };
        auto orb = [&](const Vector& a, const Vector& b) { return orbit_metriplectic_bracket(sys, a, b, x); };
        if (linear) {
            ledger.update("reduced_metriplectic.S_S_equals_entropy_production", std::abs(met(dS, dS) - sdot), x);
        }
        if (orbit) {
            ledger.update("orbit_metriplectic.S_S_equals_entropy_production", std::abs(orb(dS, dS) - sdot), x);
            for (const Casimir& c : sys.casimirs()) {
                ledger.update("double_bracket.casimir_orthogonality",
                              std::abs(l.mu_of(c.function.gradient(x)).dot(f.friction)), x);
            }
        }

        for (std::size_t j = 0; j < obs.size(); ++j) {
            const Triple t = make_triple(obs, j, x, rng);
            ledger.update("reduced_single.leibniz", std::abs(single(t.dFG) - t.F * single(t.dG) - t.G * single(t.dF)),
                          x);
            ledger.update("reduced_single.linearity",
                          std::abs(single(t.dLin) - t.a * single(t.dF) - t.b * single(t.dG)), x);
            ledger.update("reduced_double.symmetry", std::abs(dbl(t.dF, t.dG) - dbl(t.dG, t.dF)), x);
            ledger.update("reduced_double.leibniz",
                          std::abs(dbl(t.dFG, t.dE) - t.F * dbl(t.dG, t.dE) - t.G * dbl(t.dF, t.dE)), x);
            ledger.update("reduced_double.bilinearity",
                          std::abs(dbl(t.dLin, t.dE) - t.a * dbl(t.dF, t.dE) - t.b * dbl(t.dG, t.dE)), x);
            ledger.update("reduced_double.f_S_equals_single", std::abs(dbl(t.dF, dS) - single(t.dF)), x);
            if (linear) {
                ledger.update("reduced_metriplectic.symmetry", std::abs(met(t.dF, t.dG) - met(t.dG, t.dF)), x);
                ledger.update("reduced_metriplectic.h_g", std::abs(met(dh, t.dG)), x);
                ledger.at_least_zero("reduced_metriplectic.g_g_sign", met(t.dG, t.dG), x);
            }
            if (orbit) {
                ledger.update("orbit_metriplectic.symmetry", std::abs(orb(t.dF, t.dG) - orb(t.dG, t.dF)), x);
                ledger.update("orbit_metriplectic.h_g", std::abs(orb(dh, t.dG)), x);
                ledger.at_least_zero("orbit_metriplectic.g_g_sign", orb(t.dG, t.dG), x);
                for (const Casimir& c : sys.casimirs()) {
                    ledger.update("orbit_metriplectic.casimir_row", std::abs(orb(c.function.gradient(x), t.dG)), x);
                }
            }
        }
    }

    VerificationReport report;
    report.seed = options.seed;
    report.system = sys.name();
    report.gradient_mode = to_string(sys.gradient_mode());
    ledger.emit(report, reduced_thresholds(sys, tol));
    require_complete(report, expected_axiom_checks(sys));
    return report;
}

VerificationReport check_equivalence(const HamiltonianSystem& sys, int n_states, std::uint64_t seed)
{
    const StateLayout& l = sys.layout();
    const Tolerances tol = Tolerances::for_mode(sys.gradient_mode());
    Rng rng(seed);
    Ledger ledger;
    int cold_states = 0;
    for (const Vector& x : sample_states(rng, sys.sample_box(), n_states)) {
        try {
            // brackets carry no external-force term, so compare against F^ext = 0
            Vector direct = direct_vector_field(sys, x);
            const Vector v = l.p_of(sys.hamiltonian().gradient(x));
            direct.segment(l.p(), l.n) -= sys.external_force(l.q_of(x), v, l.S_of(x));

            const Vector X = hamiltonian_vector_field(sys, x);
            ledger.update("equivalence.single", max_abs_diff(direct, X + dissipative_field_single(sys, x)), x);
            ledger.update("equivalence.double", max_abs_diff(direct, X + dissipative_field_double(sys, x).field), x);
            if (sys.has_linear_transport()) {
                ledger.update("equivalence.metriplectic",
                              max_abs_diff(direct, X + dissipative_field_metriplectic(sys, x).field), x);
            }
        } catch (const ZeroTemperature&) {
            ++cold_states;
            ledger.update("equivalence.temperature_floor", static_cast<double>(cold_states), x);
        }
    }
    VerificationReport report;
    report.seed = seed;
    report.system = sys.name();
    report.gradient_mode = to_string(sys.gradient_mode());
    std::vector<std::pair<std::string, double>> th{{"equivalence.temperature_floor", 0.0},
                                                   {"equivalence.single", tol.equivalence},
                                                   {"equivalence.double", tol.equivalence}};
    if (sys.has_linear_transport()) {
        th.emplace_back("equivalence.metriplectic", tol.equivalence);
    }
    ledger.emit(report, th);
    return report;
}

VerificationReport check_equivalence(const ReducedSystem& sys, int n_states, std::uint64_t seed)
{
    const Tolerances tol = Tolerances::for_mode(sys.gradient_mode());
    const bool linear = sys.friction().kind == ReducedFriction::Kind::Linear;
    Rng rng(seed);
    Ledger ledger;
    int cold_states = 0;
    for (const Vector& x : sample_states(rng, sys.sample_box(), n_states)) {
        try {
            const Vector direct = reduced_vector_field(sys, x);
            const Vector X = reduced_hamiltonian_field(sys, x);
            ledger.update("equivalence.single", max_abs_diff(direct, X + reduced_dissipative_field_single(sys, x)), x);
            ledger.update("equivalence.double", max_abs_diff(direct, X + reduced_dissipative_field_double(sys, x)), x);
            if (linear) {
                ledger.update("equivalence.metriplectic",
                              max_abs_diff(direct, X + reduced_dissipative_field_metriplectic(sys, x)), x);
            }
            if (sys.orbit_preserving()) {
                ledger.update("equivalence.orbit_metriplectic",
                              max_abs_diff(direct, X + reduced_dissipative_field_orbit(sys, x)), x);
            }
        } catch (const ZeroTemperature&) {
            ++cold_states;
            ledger.update("equivalence.temperature_floor", static_cast<double>(cold_states), x);
        }
    }
    VerificationReport report;
    report.seed = seed;
    report.system = sys.name();
    report.gradient_mode = to_string(sys.gradient_mode());
    std::vector<std::pair<std::string, double>> th{{"equivalence.temperature_floor", 0.0},
                                                   {"equivalence.single", tol.equivalence},
                                                   {"equivalence.double", tol.equivalence}};
    if (linear) th.emplace_back("equivalence.metriplectic", tol.equivalence);
    if (sys.orbit_preserving()) th.emplace_back("equivalence.orbit_metriplectic", tol.equivalence);
    ledger.emit(report, th);
    return report;
}

namespace {

template <typename Traj>
void energy_and_entropy(VerificationReport& report, const Traj& traj, const LawTolerances& tol)
{
    if (traj.size() == 0) {
        throw InvalidArgument("check_laws: empty trajectory");
    }
    const double H0 = traj.energy.front();
    double drift = 0.0;
    std::size_t drift_at = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double d = std::abs(traj.energy[i] - H0) / std::max(1.0, std::abs(H0));
        if (d > drift) {
            drift = d;
            drift_at = i;
        }
    }
    double decrement = 0.0;
    std::size_t decrement_at = 0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double d = traj.entropy(i - 1) - traj.entropy(i);
        if (d > decrement) {
            decrement = d;
            decrement_at = i;
        }
    }
    report.record("laws.energy_drift", drift, tol.energy, traj.states[drift_at]);
    report.record("laws.entropy_decrement", decrement, tol.entropy, traj.states[decrement_at]);
}

}  // namespace

VerificationReport check_laws(const Trajectory& traj, const LawTolerances& tol)
{
    VerificationReport report;
    energy_and_entropy(report, traj, tol);
    double moles = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double d = std::abs(traj.total_moles[i] - traj.total_moles.front());
        if (d > moles) {
            moles = d;
            at = i;
        }
    }
    report.record("laws.mole_drift", moles, tol.moles, traj.states[at]);
    return report;
}

VerificationReport check_laws(const ReducedTrajectory& traj, const LawTolerances& tol)
{
    VerificationReport report;
    energy_and_entropy(report, traj, tol);
    return report;
}

VerificationReport check_casimirs(const ReducedTrajectory& traj, const std::vector<Casimir>& casimirs,
                                  double threshold)
{
    VerificationReport report;
    const std::vector<double> drift = casimir_drift(traj, casimirs);
    const double worst = drift.empty() ? 0.0 : *std::max_element(drift.begin(), drift.end());
    report.record("casimir.drift", worst, threshold);
    return report;
}

double jacobi_residual(const PoissonStructure& poisson, const Vector& point, std::uint64_t seed, int triples)
{
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < triples; ++i) {
        const Observable f = Observable::random_quadratic(rng, poisson.dim());
        const Observable g = Observable::random_quadratic(rng, poisson.dim());
        const Observable h = Observable::random_quadratic(rng, poisson.dim());
        const double r = poisson.evaluate(poisson.bracket_observable(f, g), h, point)
                       + poisson.evaluate(poisson.bracket_observable(g, h), f, point)
                       + poisson.evaluate(poisson.bracket_observable(h, f), g, point);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

VerificationReport check_jacobi(const PoissonStructure& poisson, const StateBox& box, std::uint64_t seed, int points,
                                double threshold)
{
    Rng rng(seed);
    double worst = 0.0;
    Vector worst_point;
    for (int i = 0; i < points; ++i) {
        const Vector x = box.sample(rng);
        const double r = jacobi_residual(poisson, x, seed + static_cast<std::uint64_t>(i) + 1);
        if (r >= worst) {
            worst = r;
            worst_point = x;
        }
    }
    VerificationReport report;
    report.seed = seed;
    report.system = poisson.name();
    report.record("jacobi.residual", worst, threshold, worst_point);
    return report;
}

const std::vector<CheckInfo>& check_catalog()
{
    static const std::vector<CheckInfo> catalog{
        {"state.temperature_floor", "number of sampled states with |dH/dS| below the temperature floor (must be 0)"},
        {"poisson.antisymmetry", "{F,G} = -{G,F} for the canonical bracket on T*Q plus the zero bracket on (S,N)"},
        {"poisson.leibniz", "{FG,E} = F{G,E} + G{F,E}"},
        {"poisson.H_S_commute", "{H,S} = 0: entropy is a Casimir-like direction of the reversible bracket"},
        {"poisson.G_S_commute", "{G,S} = 0 for arbitrary G (stronger metriplectic requirement)"},
        {"single.H_H", "[H,H] = 0: the single-generator dissipation bracket conserves energy (first law)"},
        {"single.S_H_sign", "[S,H] >= 0: the single-generator bracket produces entropy (second law)"},
        {"single.leibniz", "[FG,H] = F[G,H] + G[F,H]: F -> [F,H] is a derivation"},
        {"single.linearity", "[aF + bG, H] = a[F,H] + b[G,H]"},
        {"single.field_consistency", "<dF, D_H> reproduces [F,H] for the assembled dissipative field D_H"},
        {"double.symmetry", "(F,G) = (G,F) for the double-generator bracket"},
        {"double.H_S", "(H,S) = 0: energy conservation in the double-generator formalism"},
        {"double.S_S_sign", "(S,S) >= 0: entropy production in the double-generator formalism"},
        {"double.leibniz", "(FG,E) = F(G,E) + G(F,E)"},
        {"double.bilinearity", "(aF + bG, E) = a(F,E) + b(G,E)"},
        {"double.F_S_equals_single", "(F,S) equals the single-generator value [F,H]"},
        {"double.K_symmetry", "coordinate matrix K of the double-generator bracket is symmetric"},
        {"dynamics.entropy_rate_consistency", "entropy production rate equals the S-component of the direct field"},
        {"second_law.friction_power", "<F^fr, v> <= 0 at every sampled state"},
        {"second_law.flux_power", "J^{l->k} (mu_k - mu_l) <= 0 for every compartment pair at every sampled state"},
        {"metriplectic.symmetry", "(F,G)_met = (G,F)_met"},
        {"metriplectic.H_G", "(H,G)_met = 0 for arbitrary G (metriplectic degeneracy)"},
        {"metriplectic.G_G_sign", "(G,G)_met >= 0 for arbitrary G"},
        {"metriplectic.S_S_equals_entropy_production", "(S,S)_met equals the entropy production rate"},
        {"metriplectic.leibniz", "(FG,E)_met = F(G,E)_met + G(F,E)_met"},
        {"metriplectic.bilinearity", "(aF + bG, E)_met = a(F,E)_met + b(G,E)_met"},
        {"lie_poisson.antisymmetry", "{f,g} = -{g,f} for the reduced Lie-Poisson bracket"},
        {"lie_poisson.leibniz", "{fg,e} = f{g,e} + g{f,e} for the reduced Lie-Poisson bracket"},
        {"lie_poisson.h_S_commute", "{h,S} = 0 for the reduced Lie-Poisson bracket"},
        {"lie_poisson.casimir", "{c,g} = 0 for every declared Casimir c and arbitrary g"},
        {"reduced_single.h_h", "[h,h] = 0 for the reduced single-generator bracket"},
        {"reduced_single.S_h_sign", "[S,h] >= 0 for the reduced single-generator bracket"},
        {"reduced_single.leibniz", "[fg,h] = f[g,h] + g[f,h]"},
        {"reduced_single.linearity", "[af + bg, h] = a[f,h] + b[g,h]"},
        {"reduced_double.symmetry", "(f,g) = (g,f) for the reduced double-generator bracket"},
        {"reduced_double.h_S", "(h,S) = 0 for the reduced double-generator bracket"},
        {"reduced_double.S_S_sign", "(S,S) >= 0 for the reduced double-generator bracket"},
        {"reduced_double.leibniz", "(fg,e) = f(g,e) + g(f,e)"},
        {"reduced_double.bilinearity", "(af + bg, e) = a(f,e) + b(g,e)"},
        {"reduced_double.f_S_equals_single", "(f,S) equals the reduced single-generator value [f,h]"},
        {"second_law.reduced_friction_power", "<f^fr, dh/dmu> <= 0 at every sampled reduced state"},
        {"reduced_metriplectic.symmetry", "(f,g)_met = (g,f)_met for the reduced metriplectic bracket"},
        {"reduced_metriplectic.h_g", "(h,g)_met = 0 for arbitrary g"},
        {"reduced_metriplectic.g_g_sign", "(g,g)_met >= 0 for arbitrary g"},
        {"reduced_metriplectic.S_S_equals_entropy_production", "(S,S)_met equals the reduced entropy production"},
        {"orbit_metriplectic.symmetry",
         "orbit bracket evaluated through duality pairings is symmetric (audited, not assumed)"},
        {"orbit_metriplectic.h_g", "(h,g)_met = 0 on the coadjoint orbit for arbitrary g"},
        {"orbit_metriplectic.g_g_sign", "(g,g)_met >= 0 on the coadjoint orbit for arbitrary g"},
        {"orbit_metriplectic.S_S_equals_entropy_production", "(S,S)_met on the orbit equals the entropy production"},
        {"orbit_metriplectic.casimir_row", "the orbit bracket row of a Casimir vanishes (its orbit gradient is zero)"},
        {"double_bracket.casimir_orthogonality",
         "<dc/dmu, f^fr> = 0: the double-bracket force is tangent to the coadjoint orbit"},
        {"equivalence.temperature_floor", "number of equivalence states below the temperature floor (must be 0)"},
        {"equivalence.single", "direct vector field = X_H + D_H (single-generator assembly)"},
        {"equivalence.double", "direct vector field = X_H + K dS (double-generator assembly)"},
        {"equivalence.metriplectic", "direct vector field = X_H + K_met dS (metriplectic assembly)"},
        {"equivalence.orbit_metriplectic", "reduced field = X_h + K_O dS (orbit metriplectic assembly)"},
        {"laws.energy_drift", "max |H(t) - H(0)| / max(1, |H(0)|) along the trajectory (first law)"},
        {"laws.entropy_decrement", "largest decrease of S between consecutive samples (second law)"},
        {"laws.mole_drift", "max |sum N_k(t) - sum N_k(0)| (mass conservation by flux antisymmetry)"},
        {"casimir.drift", "max |c(mu(t)) - c(mu(0))| over declared Casimirs (coadjoint orbit preservation)"},
        {"jacobi.residual", "|{{f,g},h} + cyclic| over random quadratic triples (Poisson manifold premise)"},
    };
    return catalog;
}

const CheckInfo* find_check(std::string_view name)
{
    const auto& catalog = check_catalog();
    auto it = std::find_if(catalog.begin(), catalog.end(), [&](const CheckInfo& c) { return c.name == name; });
    return it == catalog.end() ? nullptr : &*it;
}

}  // namespace metriplex
