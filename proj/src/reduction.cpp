#include "metriplex/reduction.hpp"

#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>

#include "metriplex/errors.hpp"

namespace metriplex {

ReducedFriction ReducedFriction::linear(Coefficients gamma)
{
    ReducedFriction f;
    f.kind = Kind::Linear;
    f.gamma = std::move(gamma);
    return f;
}

ReducedFriction ReducedFriction::double_bracket()
{
    ReducedFriction f;
    f.kind = Kind::DoubleBracket;
    return f;
}

ReducedFriction ReducedFriction::general(Law law)
{
    ReducedFriction f;
    f.kind = Kind::General;
    f.law = std::move(law);
    return f;
}

ReducedSystem::ReducedSystem(ReducedDefinition def) : def_(std::move(def))
{
    const ReducedLayout l = layout();
    if (def_.m < 0) {
        throw InvalidArgument(def_.name + ": negative quotient dimension");
    }
    if (!def_.audit_box) {
        def_.audit_box = StateBox{Vector::Constant(l.dim(), -1.0), Vector::Constant(l.dim(), 1.0)};
    }
    if (def_.audit_box->lower.size() != l.dim() || def_.audit_box->upper.size() != l.dim()) {
        throw DimensionMismatch(def_.name + ": audit box does not match the reduced layout");
    }
    switch (def_.friction.kind) {
    case ReducedFriction::Kind::Linear:
        if (!def_.friction.gamma) throw InvalidArgument(def_.name + ": linear friction needs gamma");
        break;
    case ReducedFriction::Kind::General:
        if (!def_.friction.law) throw InvalidArgument(def_.name + ": general friction needs a law");
        break;
    case ReducedFriction::Kind::DoubleBracket:
        if (def_.m != 0) {
            throw InvalidArgument(def_.name + ": double-bracket friction requires the quotient to be a point (H = G)");
        }
        break;
    case ReducedFriction::Kind::None:
        break;
    }

    Rng rng(def_.audit_seed);
    for (int i = 0; i < def_.audit_states; ++i) {
        const Vector x = def_.audit_box->sample(rng);
        if (def_.hamiltonian.mode() == GradientMode::Analytic) {
            const double err = gradient_relative_error(def_.hamiltonian, x);
            if (!(err <= def_.gradient_tolerance)) {
                throw GradientMismatch(def_.name + ": analytic dh disagrees with finite differences", err);
            }
        }
        for (const Casimir& c : def_.casimirs) {
            if (c.function.mode() == GradientMode::Analytic
                && !(gradient_relative_error(c.function, x) <= def_.gradient_tolerance)) {
                throw GradientMismatch(def_.name + ": Casimir " + c.name + " has an inconsistent gradient", 0.0);
            }
        }
        const Matrix B = generator(l.n_of(x));
        if (B.rows() != l.m || B.cols() != l.d) {
            throw DimensionMismatch(def_.name + ": generator matrix must be m x d");
        }
        const Vector xi = l.mu_of(def_.hamiltonian.gradient(x));
        if (friction_force(xi, x).size() != l.d) {
            throw DimensionMismatch(def_.name + ": friction force has the wrong length");
        }
    }
}

Matrix ReducedSystem::generator(const Vector& n) const
{
    if (!def_.generator) {
        return Matrix::Zero(def_.m, def_.algebra.dim());
    }
    return def_.generator(n);
}

Vector ReducedSystem::friction_force(const Vector& xi, const Vector& x) const
{
    const ReducedLayout l = layout();
    switch (def_.friction.kind) {
    case ReducedFriction::Kind::Linear:
        return -(def_.friction.gamma(l.n_of(x), l.S_of(x)) * xi);
    case ReducedFriction::Kind::DoubleBracket:
        return double_bracket_friction(def_.algebra, xi, l.mu_of(x));
    case ReducedFriction::Kind::General:
        return def_.friction.law(xi, l.mu_of(x), l.n_of(x), l.S_of(x));
    case ReducedFriction::Kind::None:
        break;
    }
    return Vector::Zero(l.d);
}

PoissonStructure ReducedSystem::poisson() const
{
    auto self = std::make_shared<const ReducedSystem>(*this);
    const ReducedLayout l = layout();
    return PoissonStructure("lie-poisson(" + def_.algebra.name() + ")", l.dim(), [self, l](const Vector& x) {
        Matrix P = Matrix::Zero(l.dim(), l.dim());
        P.block(l.mu(), l.mu(), l.d, l.d) = -self->algebra().contracted(l.mu_of(x));
        if (l.m > 0) {
            const Matrix B = self->generator(l.n_of(x));
            P.block(l.mu(), l.n(), l.d, l.m) = B.transpose();
            P.block(l.n(), l.mu(), l.m, l.d) = -B;
        }
        return P;
    });
}

Vector ad_star(const LieAlgebra& alg, const Vector& xi, const Vector& mu) { return alg.ad_star(xi, mu); }

Vector momentum_map(const ReducedSystem& sys, const Vector& n, const Vector& alpha)
{
    const ReducedLayout l = sys.layout();
    if (n.size() != l.m || alpha.size() != l.m) {
        throw DimensionMismatch("momentum_map: point and covector must have the quotient dimension");
    }
    return sys.generator(n).transpose() * alpha;
}

ReducedForces reduced_forces(const ReducedSystem& sys, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    if (x.size() != l.dim()) {
        throw DimensionMismatch("reduced state does not match the system layout");
    }
    ReducedForces f;
    f.dh = sys.hamiltonian().gradient(x);
    f.T = l.S_of(f.dh);
    if (!(std::abs(f.T) >= sys.temperature_floor())) {
        throw ZeroTemperature(f.T);
    }
    f.xi = l.mu_of(f.dh);
    f.friction = sys.friction_force(f.xi, x);
    f.power = f.friction.dot(f.xi);
    return f;
}

Vector reduced_vector_field(const ReducedSystem& sys, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    const ReducedForces f = reduced_forces(sys, x);
    const Vector mu = l.mu_of(x);
    const Vector n = l.n_of(x);

    Vector dx(l.dim());
    Vector mu_dot = sys.algebra().ad_star(f.xi, mu) + f.friction;
    if (l.m > 0) {
        mu_dot += momentum_map(sys, n, l.n_of(f.dh));
        dx.segment(l.n(), l.m) = -(sys.generator(n) * f.xi);
    }
    dx.segment(l.mu(), l.d) = mu_dot;
    dx[l.S()] = -f.power / f.T;
    return dx;
}

double lie_poisson_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    const Vector df = f.gradient(x);
    const Vector dg = g.gradient(x);
    const Vector mu = l.mu_of(x);
    double value = -sys.algebra().pairing(mu, sys.algebra().bracket(l.mu_of(df), l.mu_of(dg)));
    if (l.m > 0) {
        const Vector n = l.n_of(x);
        value += l.mu_of(df).dot(momentum_map(sys, n, l.n_of(dg)));
        value -= l.mu_of(dg).dot(momentum_map(sys, n, l.n_of(df)));
    }
    return value;
}

double reduced_single_bracket(const ReducedLayout& l, const ReducedForces& f, const Vector& df)
{
    return f.friction.dot(l.mu_of(df)) - l.S_of(df) / f.T * f.power;
}

double reduced_single_bracket(const ReducedSystem& sys, const Observable& f, const Vector& x)
{
    return reduced_single_bracket(sys.layout(), reduced_forces(sys, x), f.gradient(x));
}

double reduced_double_bracket(const ReducedLayout& l, const ReducedForces& f, const Vector& df, const Vector& dg)
{
    const double f_S = l.S_of(df);
    const double g_S = l.S_of(dg);
    return f.friction.dot(l.mu_of(df)) * g_S + f.friction.dot(l.mu_of(dg)) * f_S - f.power / f.T * f_S * g_S;
}

double reduced_double_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g, const Vector& x)
{
    return reduced_double_bracket(sys.layout(), reduced_forces(sys, x), f.gradient(x), g.gradient(x));
}

double reduced_metriplectic_bracket(const ReducedLayout& l, const ReducedForces& f, const Matrix& gamma,
                                    const Vector& df, const Vector& dg)
{
    const Vector a_f = l.mu_of(df) * f.T - f.xi * l.S_of(df);
    const Vector a_g = l.mu_of(dg) * f.T - f.xi * l.S_of(dg);
    return a_f.dot(gamma * a_g) / f.T;
}

namespace {

Matrix friction_coefficients(const ReducedSystem& sys, const Vector& x)
{
    if (sys.friction().kind != ReducedFriction::Kind::Linear) {
        throw MissingLinearTransport();
    }
    const ReducedLayout l = sys.layout();
    return sys.friction().gamma(l.n_of(x), l.S_of(x));
}

}  // namespace

double reduced_metriplectic_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g,
                                    const Vector& x)
{
    const Matrix gamma = friction_coefficients(sys, x);
    return reduced_metriplectic_bracket(sys.layout(), reduced_forces(sys, x), gamma, f.gradient(x), g.gradient(x));
}

Vector double_bracket_friction(const LieAlgebra& alg, const Vector& xi, const Vector& mu)
{
    return alg.ad_star(alg.sharp(alg.ad_star(xi, mu)), mu);
}

Vector double_bracket_friction(const ReducedSystem& sys, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    return double_bracket_friction(sys.algebra(), l.mu_of(sys.hamiltonian().gradient(x)), l.mu_of(x));
}

Vector orbit_gradient(const LieAlgebra& alg, const Vector& df_dmu, const Vector& mu)
{
    return -double_bracket_friction(alg, df_dmu, mu);
}

double orbit_metriplectic_bracket(const ReducedSystem& sys, const Vector& df, const Vector& dg, const Vector& x)
{
    if (!sys.orbit_preserving()) {
        throw InvalidArgument(sys.name() + ": orbit bracket requires double-bracket friction");
    }
    const ReducedLayout l = sys.layout();
    const ReducedForces forces = reduced_forces(sys, x);
    const LieAlgebra& alg = sys.algebra();
    const Vector mu = l.mu_of(x);
    const Vector& dh = forces.dh;

    // gamma_O(grad a, grad b) = d_mu a . grad b = <grad b, da/dmu>
    auto metric = [&](const Vector& da, const Vector& db) {
        return orbit_gradient(alg, l.mu_of(db), mu).dot(l.mu_of(da));
    };
    const double T = forces.T;
    const double f_S = l.S_of(df);
    const double g_S = l.S_of(dg);
    const double value = T * T * metric(df, dg) - T * g_S * metric(df, dh) - T * f_S * metric(dh, dg)
                       + f_S * g_S * metric(dh, dh);
    return value / T;
}

double orbit_metriplectic_bracket(const ReducedSystem& sys, const Observable& f, const Observable& g,
                                  const Vector& x)
{
    return orbit_metriplectic_bracket(sys, f.gradient(x), g.gradient(x), x);
}

double orbit_bracket_symmetry_defect(const ReducedSystem& sys, const Observable& f, const Observable& g,
                                     const Vector& x)
{
    const Vector df = f.gradient(x);
    const Vector dg = g.gradient(x);
    return std::abs(orbit_metriplectic_bracket(sys, df, dg, x) - orbit_metriplectic_bracket(sys, dg, df, x));
}

Vector reduced_hamiltonian_field(const ReducedSystem& sys, const Vector& x)
{
    return sys.poisson().hamiltonian_field(sys.hamiltonian(), x);
}

namespace {

template <typename Bracket>
Vector coordinate_field(Index dim, Bracket&& bracket)
{
    Vector D(dim);
    for (Index i = 0; i < dim; ++i) {
        D[i] = bracket(Vector::Unit(dim, i));
    }
    return D;
}

}  // namespace

Vector reduced_dissipative_field_single(const ReducedSystem& sys, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    const ReducedForces f = reduced_forces(sys, x);
    return coordinate_field(l.dim(), [&](const Vector& e) { return reduced_single_bracket(l, f, e); });
}

Vector reduced_dissipative_field_double(const ReducedSystem& sys, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    const ReducedForces f = reduced_forces(sys, x);
    const Vector dS = Vector::Unit(l.dim(), l.S());
    return coordinate_field(l.dim(), [&](const Vector& e) { return reduced_double_bracket(l, f, e, dS); });
}

Vector reduced_dissipative_field_metriplectic(const ReducedSystem& sys, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    const Matrix gamma = friction_coefficients(sys, x);
    const ReducedForces f = reduced_forces(sys, x);
    const Vector dS = Vector::Unit(l.dim(), l.S());
    return coordinate_field(l.dim(), [&](const Vector& e) { return reduced_metriplectic_bracket(l, f, gamma, e, dS); });
}

Vector reduced_dissipative_field_orbit(const ReducedSystem& sys, const Vector& x)
{
    const ReducedLayout l = sys.layout();
    const Vector dS = Vector::Unit(l.dim(), l.S());
    return coordinate_field(l.dim(), [&](const Vector& e) { return orbit_metriplectic_bracket(sys, e, dS, x); });
}

ReducedTrajectory integrate_reduced(const ReducedSystem& sys, const Vector& x0, const IntegrationOptions& options)
{
    const ReducedLayout l = sys.layout();
    if (x0.size() != l.dim()) {
        throw DimensionMismatch("initial reduced state does not match the system layout");
    }
    if (!x0.allFinite()) {
        throw InvalidArgument("initial reduced state has non-finite entries");
    }
    if (options.stride < 1) {
        throw InvalidArgument("output stride must be at least 1");
    }
    const std::size_t steps = step_count(options.t_end, options.h);
    const StateField rhs = [&sys](const Vector& x) { return reduced_vector_field(sys, x); };

    ReducedTrajectory traj;
    traj.layout = l;
    for (const Casimir& c : sys.casimirs()) {
        traj.casimir_names.push_back(c.name);
    }
    auto record = [&](double t, const Vector& x) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.energy.push_back(sys.hamiltonian()(x));
        Vector cv(static_cast<Index>(sys.casimirs().size()));
        for (std::size_t i = 0; i < sys.casimirs().size(); ++i) {
            cv[static_cast<Index>(i)] = sys.casimirs()[i].function(x);
        }
        traj.casimir_values.push_back(cv);
    };

    Vector x = x0;
    record(0.0, x);
    double t = 0.0;
    for (std::size_t i = 1; i <= steps; ++i) {
        const double t_next = i == steps ? options.t_end : static_cast<double>(i) * options.h;
        try {
            x = rk4_step(rhs, x, t_next - t);
        } catch (const ZeroTemperature& e) {
            throw ZeroTemperature(e.temperature(), t);
        }
        if (!x.allFinite()) {
            throw DivergedAt(t_next);
        }
        t = t_next;
        if (i % static_cast<std::size_t>(options.stride) == 0 || i == steps) {
            record(t, x);
        }
    }
    return traj;
}

std::vector<std::string> ReducedTrajectory::csv_header() const
{
    std::vector<std::string> cols{"t"};
    for (Index i = 1; i <= layout.d; ++i) cols.push_back("mu_" + std::to_string(i));
    for (Index i = 1; i <= layout.m; ++i) cols.push_back("n_" + std::to_string(i));
    cols.push_back("S");
    cols.push_back("h");
    for (std::size_t i = 1; i <= casimir_names.size(); ++i) cols.push_back("casimir_" + std::to_string(i));
    return cols;
}

void ReducedTrajectory::write_csv(std::ostream& os) const
{
    const auto header = csv_header();
    for (std::size_t c = 0; c < header.size(); ++c) {
        os << (c ? "," : "") << header[c];
    }
    os << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < size(); ++i) {
        os << times[i];
        for (Index j = 0; j < layout.dim(); ++j) os << ',' << states[i][j];
        os << ',' << energy[i];
        for (Index c = 0; c < casimir_values[i].size(); ++c) os << ',' << casimir_values[i][c];
        os << '\n';
    }
}

std::vector<double> casimir_drift(const ReducedTrajectory& traj, const std::vector<Casimir>& casimirs)
{
    std::vector<double> drift(casimirs.size(), 0.0);
    if (traj.size() == 0) {
        throw InvalidArgument("casimir_drift: empty trajectory");
    }
    for (std::size_t c = 0; c < casimirs.size(); ++c) {
        const double c0 = casimirs[c].function(traj.states.front());
        for (const Vector& x : traj.states) {
            drift[c] = std::max(drift[c], std::abs(casimirs[c].function(x) - c0));
        }
    }
    return drift;
}

Casimir so3_casimir(const ReducedLayout& l)
{
    return {"half_norm_squared",
            Observable([l](const Vector& x) { return 0.5 * l.mu_of(x).squaredNorm(); },
                       [l](const Vector& x) {
                           Vector g = Vector::Zero(l.dim());
                           g.segment(l.mu(), l.d) = l.mu_of(x);
                           return g;
                       })};
}

}  // namespace metriplex
