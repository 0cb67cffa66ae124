#include "metriplex/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "metriplex/errors.hpp"

namespace metriplex {

Vector direct_vector_field(const HamiltonianSystem& sys, const Vector& x)
{
    const StateLayout& l = sys.layout();
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    const Vector q = l.q_of(x);
    const double S = l.S_of(x);

    Vector dx(l.dim());
    dx.segment(l.q(), l.n) = f.velocity;
    dx.segment(l.p(), l.n) = -l.q_of(f.dH) + f.friction + sys.external_force(q, f.velocity, S);
    dx[l.S()] = -f.power / f.T;
    dx.segment(l.N(), l.K) = f.flux.rowwise().sum();
    return dx;
}

double entropy_production_rate(const HamiltonianSystem& sys, const Vector& x)
{
    const ThermodynamicForces f = thermodynamic_forces(sys, x);
    const double friction_part = -f.friction.dot(f.velocity) / f.T;
    const double transfer_part = -flux_contraction(f.flux, f.mu) / f.T;
    return friction_part + transfer_part;
}

Vector rk4_step(const StateField& field, const Vector& x, double h)
{
    const Vector k1 = field(x);
    const Vector k2 = field(x + 0.5 * h * k1);
    const Vector k3 = field(x + 0.5 * h * k2);
    const Vector k4 = field(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::size_t step_count(double t_end, double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw InvalidArgument("step size must be positive");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw InvalidArgument("end time must be nonnegative");
    }
    const double ratio = t_end / h;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::ceil(ratio));
}

namespace {

void record(Trajectory& traj, const HamiltonianSystem& sys, double t, const Vector& x, const Vector& mu,
            const Vector& W)
{
    const StateLayout& l = sys.layout();
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.energy.push_back(sys.hamiltonian()(x));
    traj.temperature.push_back(l.S_of(sys.hamiltonian().gradient(x)));
    try {
        traj.entropy_production.push_back(entropy_production_rate(sys, x));
    } catch (const ZeroTemperature& e) {
        throw ZeroTemperature(e.temperature(), t);
    }
    traj.total_moles.push_back(l.N_of(x).sum());
    traj.chemical_potentials.push_back(mu);
    traj.displacements.push_back(W);
}

}  // namespace

Trajectory integrate(const HamiltonianSystem& sys, const Vector& x0, const IntegrationOptions& options,
                     const StateField& field)
{
    const StateLayout& l = sys.layout();
    if (x0.size() != l.dim()) {
        throw DimensionMismatch("initial state does not match the system layout");
    }
    if (!x0.allFinite()) {
        throw InvalidArgument("initial state has non-finite entries");
    }
    if (options.stride < 1) {
        throw InvalidArgument("output stride must be at least 1");
    }
    const std::size_t steps = step_count(options.t_end, options.h);
    const StateField rhs = field ? field : StateField([&sys](const Vector& x) { return direct_vector_field(sys, x); });
    auto potentials = [&](const Vector& x) {
        return l.K == 0 ? Vector(Vector::Zero(0)) : l.N_of(sys.hamiltonian().gradient(x)).eval();
    };

    Trajectory traj;
    traj.layout = l;
    Vector x = x0;
    Vector mu = potentials(x);
    Vector W = Vector::Zero(l.K);
    std::vector<bool> warned(static_cast<std::size_t>(l.K), false);
    record(traj, sys, 0.0, x, mu, W);

    double t = 0.0;
    for (std::size_t i = 1; i <= steps; ++i) {
        const double t_next = i == steps ? options.t_end : static_cast<double>(i) * options.h;
        const double h = t_next - t;
        try {
            x = rk4_step(rhs, x, h);
        } catch (const ZeroTemperature& e) {
            throw ZeroTemperature(e.temperature(), t);
        }
        if (!x.allFinite()) {
            throw DivergedAt(t_next);
        }
        const Vector mu_next = potentials(x);
        W += 0.5 * h * (mu + mu_next);
        mu = mu_next;
        t = t_next;

        if (options.moles != MolePolicy::Ignore) {
            for (Index k = 0; k < l.K; ++k) {
                if (l.N_of(x)[k] >= 0.0) {
                    continue;
                }
                if (options.moles == MolePolicy::Abort) {
                    throw NegativeMoles(static_cast<std::size_t>(k), t);
                }
                if (!warned[static_cast<std::size_t>(k)]) {
                    warned[static_cast<std::size_t>(k)] = true;
                    traj.warnings.push_back(NegativeMoles(static_cast<std::size_t>(k), t).what());
                }
            }
        }
        if (i % static_cast<std::size_t>(options.stride) == 0 || i == steps) {
            record(traj, sys, t, x, mu, W);
        }
    }
    return traj;
}

std::vector<std::string> Trajectory::csv_header() const
{
    std::vector<std::string> cols{"t"};
    for (Index i = 1; i <= layout.n; ++i) cols.push_back("q_" + std::to_string(i));
    for (Index i = 1; i <= layout.n; ++i) cols.push_back("p_" + std::to_string(i));
    cols.push_back("S");
    for (Index k = 1; k <= layout.K; ++k) cols.push_back("N_" + std::to_string(k));
    cols.insert(cols.end(), {"H", "T", "sigma"});
    for (Index k = 1; k <= layout.K; ++k) cols.push_back("W_" + std::to_string(k));
    cols.push_back("totalN");
    return cols;
}

void Trajectory::write_csv(std::ostream& os) const
{
    const auto header = csv_header();
    for (std::size_t c = 0; c < header.size(); ++c) {
        os << (c ? "," : "") << header[c];
    }
    os << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < size(); ++i) {
        const Vector& x = states[i];
        os << times[i];
        for (Index j = 0; j < 2 * layout.n + 1 + layout.K; ++j) os << ',' << x[j];
        os << ',' << energy[i] << ',' << temperature[i] << ',' << entropy_production[i];
        for (Index k = 0; k < layout.K; ++k) os << ',' << displacements[i][k];
        os << ',' << total_moles[i] << '\n';
    }
}

AdmissibilityReport admissibility_audit(const HamiltonianSystem& sys, const std::vector<Vector>& states)
{
    const StateLayout& l = sys.layout();
    AdmissibilityReport report;
    report.max_friction_power = -std::numeric_limits<double>::infinity();
    report.max_flux_power = l.K > 1 ? -std::numeric_limits<double>::infinity() : 0.0;
    for (const Vector& x : states) {
        const Vector dH = sys.hamiltonian().gradient(x);
        const Vector v = l.p_of(dH);
        const Vector mu = l.N_of(dH);
        const double S = l.S_of(x);
        const double friction_power = sys.friction(l.q_of(x), v, S).dot(v);
        if (friction_power > report.max_friction_power) {
            report.max_friction_power = friction_power;
            report.worst_friction_state = x;
        }
        const Matrix J = sys.flux(S, l.N_of(x), mu);
        for (Index k = 0; k < l.K; ++k) {
            for (Index m = k + 1; m < l.K; ++m) {
                const double power = J(k, m) * (mu[k] - mu[m]);
                if (power > report.max_flux_power) {
                    report.max_flux_power = power;
                    report.worst_flux_state = x;
                }
            }
        }
    }
    if (states.empty()) {
        report.max_friction_power = 0.0;
    }
    report.pass = report.max_friction_power <= AdmissibilityReport::threshold
               && report.max_flux_power <= AdmissibilityReport::threshold;
    return report;
}

}  // namespace metriplex
