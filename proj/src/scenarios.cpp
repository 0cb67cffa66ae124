#include "metriplex/scenarios.hpp"

#include <cmath>

#include "metriplex/errors.hpp"
#include "metriplex/verify.hpp"

namespace metriplex {

namespace {

const ScenarioInfo& info(const std::string& name);

class Params {
public:
    Params(const std::string& scenario, ParameterMap defaults, const ParameterMap& overrides)
        : scenario_(scenario), values_(std::move(defaults))
    {
        for (const auto& [key, value] : overrides) {
            if (!std::isfinite(value)) {
                fail(key, "must be finite");
            }
            values_[key] = value;
        }
    }

    double get(const std::string& key) const { return values_.at(key); }

    double positive(const std::string& key) const
    {
        const double v = get(key);
        if (!(v > 0.0)) fail(key, "must be > 0");
        return v;
    }

    double nonnegative(const std::string& key) const
    {
        const double v = get(key);
        if (v < 0.0) fail(key, "must be >= 0");
        return v;
    }

    bool flag(const std::string& key) const
    {
        const double v = get(key);
        if (v != 0.0 && v != 1.0) fail(key, "must be 0 or 1");
        return v == 1.0;
    }

    int integer(const std::string& key, int lo) const
    {
        const double v = get(key);
        if (v != std::floor(v) || v < lo || v > 64) fail(key, "must be an integer in [" + std::to_string(lo) + ", 64]");
        return static_cast<int>(v);
    }

    /// Rejects any key not in `allowed`.
    void restrict_to(const ParameterMap& allowed) const
    {
        for (const auto& [key, value] : values_) {
            if (allowed.count(key) == 0) {
                throw InvalidArgument("scenario '" + scenario_ + "' has no parameter '" + key + "'");
            }
        }
    }

    void set_default(const std::string& key, double value) { values_.emplace(key, value); }
    const ParameterMap& values() const noexcept { return values_; }

private:
    [[noreturn]] void fail(const std::string& key, const std::string& why) const
    {
        throw InvalidArgument("scenario '" + scenario_ + "': parameter '" + key + "' " + why);
    }

    std::string scenario_;
    ParameterMap values_;
};

Observable maybe_fd(Observable h, bool fd) { return fd ? h.without_gradient() : h; }

ForceLaw negated(ForceLaw law)
{
    return [law = std::move(law)](const Vector& q, const Vector& v, double S) -> Vector { return -law(q, v, S); };
}

FluxLaw negated(FluxLaw law)
{
    return [law = std::move(law)](double S, const Vector& N, const Vector& mu) -> Matrix { return -law(S, N, mu); };
}

/// Replaces the linear relations by explicit, sign-flipped laws.
void sabotage(HamiltonianDefinition& def)
{
    const LinearTransport lt = *def.linear_transport;
    const StateLayout l = def.layout;
    def.friction = negated(ForceLaw([lt](const Vector& q, const Vector& v, double S) -> Vector {
        return -lt.friction_coefficients(q, S) * v;
    }));
    if (l.K > 0) {
        def.flux = negated(FluxLaw([lt](double S, const Vector& N, const Vector& mu) -> Matrix {
            const Matrix G = lt.conductances(S, N);
            Matrix J = Matrix::Zero(G.rows(), G.cols());
            for (Index k = 0; k < J.rows(); ++k) {
                for (Index m = 0; m < J.cols(); ++m) {
                    J(k, m) = -G(k, m) * (mu[k] - mu[m]);
                }
            }
            return J;
        }));
    }
    def.linear_transport.reset();
}

std::vector<std::string> expected_for(const HamiltonianSystem& sys)
{
    std::vector<std::string> names = expected_axiom_checks(sys);
    names.insert(names.end(), {"equivalence.single", "equivalence.double", "laws.energy_drift",
                               "laws.entropy_decrement", "laws.mole_drift", "jacobi.residual"});
    if (sys.has_linear_transport()) names.emplace_back("equivalence.metriplectic");
    return names;
}

std::vector<std::string> expected_for(const ReducedSystem& sys)
{
    std::vector<std::string> names = expected_axiom_checks(sys);
    names.insert(names.end(),
                 {"equivalence.single", "equivalence.double", "laws.energy_drift", "laws.entropy_decrement",
                  "jacobi.residual"});
    if (sys.friction().kind == ReducedFriction::Kind::Linear) names.emplace_back("equivalence.metriplectic");
    if (sys.orbit_preserving()) {
        names.emplace_back("equivalence.orbit_metriplectic");
        names.emplace_back("casimir.drift");
    }
    return names;
}

Scenario damped_oscillator(Params p, BuildOptions options)
{
    const double m = p.positive("m");
    const double k = p.nonnegative("k");
    const double lambda = p.nonnegative("lambda");
    const double alpha = p.positive("alpha");
    const bool nonlinear = p.flag("nonlinear_entropy");
    const bool fd = p.flag("fd_gradients");

    HamiltonianDefinition def;
    def.name = "damped_oscillator_thermal";
    def.layout = {1, 0};
    // x = [q, p, S]
    const ScalarMap value = [=](const Vector& x) {
        const double u = nonlinear ? alpha * std::exp(x[2]) : alpha * x[2];
        return x[1] * x[1] / (2 * m) + 0.5 * k * x[0] * x[0] + u;
    };
    const GradientMap gradient = [=](const Vector& x) {
        Vector g(3);
        g << k * x[0], x[1] / m, nonlinear ? alpha * std::exp(x[2]) : alpha;
        return g;
    };
    def.hamiltonian = maybe_fd(Observable(value, gradient), fd);
    def.linear_transport = LinearTransport{
        [lambda](const Vector&, double) { return Matrix::Constant(1, 1, lambda); },
        [](double, const Vector&) { return Matrix(0, 0); },
    };
    def.audit_box = StateBox::standard(def.layout);
    if (options.sabotage) sabotage(def);

    Scenario s;
    s.system = std::make_shared<const HamiltonianSystem>(def);
    s.spec.initial_state = Vector(3);
    s.spec.initial_state << p.get("q0"), p.get("p0"), p.get("S0");
    s.spec.expected_checks = expected_for(*s.system);
    return s;
}

Scenario compartment_diffusion(Params p, BuildOptions options)
{
    const int K = p.integer("K", 1);
    for (int k = 1; k <= K; ++k) {
        p.set_default("N0_" + std::to_string(k), k == 1 ? 2.0 : 0.0);
    }
    ParameterMap allowed = info("compartment_diffusion").defaults;
    for (int k = 1; k <= K; ++k) allowed["N0_" + std::to_string(k)] = 0.0;
    p.restrict_to(allowed);

    const double c = p.positive("c");
    const double G = p.nonnegative("G");
    const double alpha = p.positive("alpha");
    const bool fd = p.flag("fd_gradients");

    HamiltonianDefinition def;
    def.name = "compartment_diffusion";
    def.layout = {1, K};
    const Index n0 = def.layout.N();
    // x = [q, p, S, N_1..N_K]; mechanics carries no energy and stays frozen
    const ScalarMap value = [=](const Vector& x) { return alpha * x[2] + 0.5 * c * x.segment(n0, K).squaredNorm(); };
    const GradientMap gradient = [=](const Vector& x) {
        Vector g = Vector::Zero(x.size());
        g[2] = alpha;
        g.segment(n0, K) = c * x.segment(n0, K);
        return g;
    };
    def.hamiltonian = maybe_fd(Observable(value, gradient), fd);
    def.linear_transport = LinearTransport{
        [](const Vector&, double) { return Matrix::Zero(1, 1); },
        [G, K](double, const Vector&) {
            Matrix g = Matrix::Constant(K, K, G);
            g.diagonal().setZero();
            return g;
        },
    };
    def.audit_box = StateBox::standard(def.layout);
    if (options.sabotage) sabotage(def);

    Scenario s;
    s.system = std::make_shared<const HamiltonianSystem>(def);
    s.spec.initial_state = Vector::Zero(def.layout.dim());
    s.spec.initial_state[2] = p.get("S0");
    for (int k = 1; k <= K; ++k) {
        const double N = p.nonnegative("N0_" + std::to_string(k));
        s.spec.initial_state[n0 + k - 1] = N;
    }
    s.spec.t_end = 5.0;
    s.spec.expected_checks = expected_for(*s.system);
    s.spec.parameters = p.values();
    return s;
}

struct RigidBodyParams {
    Vector inertia = Vector(3);
    double alpha = 1.0;
    double gamma = 1.0;
    Vector x0 = Vector(4);
    bool fd = false;
};

RigidBodyParams rigid_body_params(const Params& p)
{
    RigidBodyParams r;
    r.inertia << p.positive("I1"), p.positive("I2"), p.positive("I3");
    r.alpha = p.positive("alpha");
    r.gamma = p.positive("gamma");
    r.fd = p.flag("fd_gradients");
    Vector mu(3);
    mu << p.get("mu0_1"), p.get("mu0_2"), p.get("mu0_3");
    if (p.flag("normalize_mu0")) {
        if (mu.norm() == 0.0) {
            throw InvalidArgument("rigid body: mu0 must be nonzero to normalize");
        }
        mu.normalize();
    }
    r.x0 << mu, p.get("S0");
    return r;
}

Observable rigid_body_hamiltonian(const RigidBodyParams& r)
{
    // x = [mu_1, mu_2, mu_3, S]
    const Vector I = r.inertia;
    const double alpha = r.alpha;
    const ScalarMap value = [=](const Vector& x) {
        return 0.5 * x.head(3).cwiseAbs2().cwiseQuotient(I).sum() + alpha * x[3];
    };
    const GradientMap gradient = [=](const Vector& x) {
        Vector g(4);
        g << x.head(3).cwiseQuotient(I), alpha;
        return g;
    };
    return maybe_fd(Observable(value, gradient), r.fd);
}

ReducedDefinition rigid_body_definition(const std::string& name, const RigidBodyParams& r, LieAlgebra algebra)
{
    ReducedDefinition def;
    def.name = name;
    def.algebra = std::move(algebra);
    def.hamiltonian = rigid_body_hamiltonian(r);
    def.casimirs = {so3_casimir(ReducedLayout{3, 0})};
    def.audit_box = StateBox{Vector::Constant(4, -1.0), Vector::Constant(4, 1.0)};
    return def;
}

ReducedFriction sabotaged(const ReducedFriction& f, const LieAlgebra& alg)
{
    if (f.kind == ReducedFriction::Kind::Linear) {
        return ReducedFriction::general(
            [gamma = f.gamma](const Vector& xi, const Vector&, const Vector& n, double S) -> Vector {
                return gamma(n, S) * xi;
            });
    }
    return ReducedFriction::general([alg](const Vector& xi, const Vector& mu, const Vector&, double) -> Vector {
        return -double_bracket_friction(alg, xi, mu);
    });
}

Scenario rigid_body_linear(const Params& p, BuildOptions options)
{
    const RigidBodyParams r = rigid_body_params(p);
    ReducedDefinition def = rigid_body_definition("rigid_body_linear_friction", r, LieAlgebra::so3());
    const double gamma = r.gamma;
    def.friction = ReducedFriction::linear([gamma](const Vector&, double) { return gamma * Matrix::Identity(3, 3); });
    if (options.sabotage) def.friction = sabotaged(def.friction, def.algebra);

    Scenario s;
    s.reduced = std::make_shared<const ReducedSystem>(def);
    s.spec.initial_state = r.x0;
    s.spec.expected_checks = expected_for(*s.reduced);
    return s;
}

Scenario rigid_body_double_bracket(const Params& p, BuildOptions options)
{
    const RigidBodyParams r = rigid_body_params(p);
    // gamma is the inner product on so(3) that defines the sharp map
    ReducedDefinition def = rigid_body_definition("rigid_body_double_bracket", r,
                                                  LieAlgebra::so3(r.gamma * Matrix::Identity(3, 3)));
    def.friction = ReducedFriction::double_bracket();
    if (options.sabotage) def.friction = sabotaged(def.friction, def.algebra);

    Scenario s;
    s.reduced = std::make_shared<const ReducedSystem>(def);
    s.spec.initial_state = r.x0;
    s.spec.expected_checks = expected_for(*s.reduced);
    return s;
}

ParameterMap rigid_body_defaults(double gamma)
{
    return {{"I1", 1.0},   {"I2", 2.0},   {"I3", 3.0},   {"alpha", 1.0},         {"gamma", gamma},
            {"mu0_1", 1.0}, {"mu0_2", 0.0}, {"mu0_3", 0.2}, {"normalize_mu0", 1.0}, {"S0", 0.0},
            {"fd_gradients", 0.0}};
}

const ScenarioInfo& info(const std::string& name)
{
    for (const ScenarioInfo& s : scenario_catalog()) {
        if (s.name == name) return s;
    }
    throw UnknownScenario(name);
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog()
{
    static const std::vector<ScenarioInfo> catalog{
        {"damped_oscillator_thermal",
         "n=1, K=0. H = p^2/(2m) + k q^2/2 + alpha S (alpha e^S with nonlinear_entropy=1), F = -lambda p/m",
         {{"m", 1.0},
          {"k", 1.0},
          {"lambda", 0.2},
          {"alpha", 1.0},
          {"q0", 1.0},
          {"p0", 0.0},
          {"S0", 0.0},
          {"nonlinear_entropy", 0.0},
          {"fd_gradients", 0.0}}},
        {"compartment_diffusion",
         "n=1 frozen mechanics, K compartments. H = alpha S + c/2 sum N_k^2, J(k,l) = -G (mu_k - mu_l); "
         "initial moles N0_1..N0_K",
         {{"K", 2.0}, {"c", 1.0}, {"G", 1.0}, {"alpha", 1.0}, {"S0", 0.0}, {"fd_gradients", 0.0}}},
        {"rigid_body_linear_friction",
         "so(3). h = sum mu_i^2/(2 I_i) + alpha S, f = -gamma Omega",
         rigid_body_defaults(0.1)},
        {"rigid_body_double_bracket",
         "so(3). Same h, orbit-preserving double-bracket friction with inner product gamma * identity",
         rigid_body_defaults(1.0)},
    };
    return catalog;
}

Scenario build_scenario(const std::string& name, const ParameterMap& overrides, BuildOptions options)
{
    const ScenarioInfo& base = info(name);
    Params p(name, base.defaults, overrides);
    Scenario s;
    if (name == "damped_oscillator_thermal") {
        p.restrict_to(base.defaults);
        s = damped_oscillator(p, options);
    } else if (name == "compartment_diffusion") {
        s = compartment_diffusion(p, options);
    } else if (name == "rigid_body_linear_friction") {
        p.restrict_to(base.defaults);
        s = rigid_body_linear(p, options);
    } else {
        p.restrict_to(base.defaults);
        s = rigid_body_double_bracket(p, options);
    }
    s.spec.name = name;
    if (s.spec.parameters.empty()) s.spec.parameters = p.values();
    return s;
}

}  // namespace metriplex
