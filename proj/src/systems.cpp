#include "metriplex/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "metriplex/errors.hpp"

namespace metriplex {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

HamiltonianSystem::HamiltonianSystem(HamiltonianDefinition def) : def_(std::move(def))
{
    def_.layout.validate();
    if (!def_.audit_box) {
        def_.audit_box = StateBox::standard(def_.layout);
    }
    if (def_.audit_box->lower.size() != def_.layout.dim() || def_.audit_box->upper.size() != def_.layout.dim()) {
        throw DimensionMismatch("audit box does not match the state layout");
    }
    if (!(def_.temperature_floor > 0.0)) {
        throw InvalidArgument("temperature floor must be positive");
    }
    if (def_.linear_transport) {
        const LinearTransport& lt = *def_.linear_transport;
        if (!lt.friction_coefficients || !lt.conductances) {
            throw InvalidArgument("linear transport needs both lambda and G");
        }
        if (!def_.friction) {
            def_.friction = [lt](const Vector& q, const Vector& v, double S) {
                return (-(lt.friction_coefficients(q, S) * v)).eval();
            };
        }
        if (!def_.flux) {
            def_.flux = [lt](double S, const Vector& N, const Vector& mu) {
                const Matrix G = lt.conductances(S, N);
                Matrix J(N.size(), N.size());
                for (Index k = 0; k < N.size(); ++k) {
                    for (Index l = 0; l < N.size(); ++l) {
                        J(k, l) = -G(k, l) * (mu[k] - mu[l]);
                    }
                }
                return J;
            };
        }
    }
    audit();
}

Vector HamiltonianSystem::friction(const Vector& q, const Vector& v, double S) const
{
    if (!def_.friction) {
        return Vector::Zero(def_.layout.n);
    }
    return def_.friction(q, v, S);
}

Vector HamiltonianSystem::external_force(const Vector& q, const Vector& v, double S) const
{
    if (!def_.external_force) {
        return Vector::Zero(def_.layout.n);
    }
    return def_.external_force(q, v, S);
}

Matrix HamiltonianSystem::flux(double S, const Vector& N, const Vector& mu) const
{
    if (!def_.flux) {
        return Matrix::Zero(def_.layout.K, def_.layout.K);
    }
    return def_.flux(S, N, mu);
}

const LinearTransport& HamiltonianSystem::linear_transport() const
{
    if (!def_.linear_transport) {
        throw MissingLinearTransport();
    }
    return *def_.linear_transport;
}

void HamiltonianSystem::audit() const
{
    const StateLayout& l = def_.layout;
    Rng rng(def_.audit_seed);
    for (int i = 0; i < def_.audit_states; ++i) {
        const Vector x = def_.audit_box->sample(rng);
        if (def_.hamiltonian.mode() == GradientMode::Analytic) {
            const double err = gradient_relative_error(def_.hamiltonian, x);
            if (!(err <= def_.gradient_tolerance)) {
                throw GradientMismatch(def_.name + ": analytic dH disagrees with finite differences", err);
            }
        }
        const Vector dH = def_.hamiltonian.gradient(x);
        const Vector q = l.q_of(x);
        const Vector v = l.p_of(dH);
        const Vector N = l.N_of(x);
        const Vector mu = l.N_of(dH);
        const double S = l.S_of(x);

        const Vector F = friction(q, v, S);
        if (F.size() != l.n) {
            throw DimensionMismatch(def_.name + ": friction law returned the wrong length");
        }
        const Matrix J = flux(S, N, mu);
        if (J.rows() != l.K || J.cols() != l.K) {
            throw DimensionMismatch(def_.name + ": flux law returned the wrong shape");
        }
        if (max_abs(J + J.transpose()) > 1e-12 * std::max(1.0, max_abs(J))) {
            throw InvalidArgument(def_.name + ": flux matrix is not antisymmetric");
        }

        if (!def_.linear_transport) {
            continue;
        }
        const Matrix lambda = def_.linear_transport->friction_coefficients(q, S);
        const Matrix G = def_.linear_transport->conductances(S, N);
        if (lambda.rows() != l.n || lambda.cols() != l.n || G.rows() != l.K || G.cols() != l.K) {
            throw DimensionMismatch(def_.name + ": linear transport coefficients have the wrong shape");
        }
        const Matrix lambda_sym = 0.5 * (lambda + lambda.transpose());
        const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(lambda_sym).eigenvalues().minCoeff();
        if (min_eig < -1e-12 * std::max(1.0, max_abs(lambda))) {
            throw InvalidArgument(def_.name + ": symmetric part of lambda is not positive semi-definite");
        }
        if (max_abs(G - G.transpose()) > 1e-12 * std::max(1.0, max_abs(G))) {
            throw InvalidArgument(def_.name + ": conductance matrix G is not symmetric");
        }
        for (Index k = 0; k < l.K; ++k) {
            for (Index m = 0; m < l.K; ++m) {
                if (k != m && G(k, m) < 0.0) {
                    throw InvalidArgument(def_.name + ": conductance matrix G has a negative entry");
                }
            }
        }
        const Vector F_linear = -(lambda * v);
        if ((F - F_linear).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, F_linear.cwiseAbs().maxCoeff())) {
            throw InvalidArgument(def_.name + ": friction law disagrees with F = -lambda v");
        }
        Matrix J_linear(l.K, l.K);
        for (Index k = 0; k < l.K; ++k) {
            for (Index m = 0; m < l.K; ++m) {
                J_linear(k, m) = -G(k, m) * (mu[k] - mu[m]);
            }
        }
        if (max_abs(J - J_linear) > 1e-10 * std::max(1.0, max_abs(J_linear))) {
            throw InvalidArgument(def_.name + ": flux law disagrees with J = -G (mu_k - mu_l)");
        }
    }
}

double flux_contraction(const Matrix& flux, const Vector& a)
{
    double sum = 0.0;
    for (Index k = 0; k < flux.rows(); ++k) {
        for (Index l = k + 1; l < flux.cols(); ++l) {
            sum += flux(k, l) * (a[k] - a[l]);
        }
    }
    return sum;
}

ThermodynamicForces thermodynamic_forces(const HamiltonianSystem& sys, const Vector& x)
{
    const StateLayout& l = sys.layout();
    if (x.size() != l.dim()) {
        throw DimensionMismatch("state does not match the system layout");
    }
    ThermodynamicForces f;
    f.dH = sys.hamiltonian().gradient(x);
    f.T = l.S_of(f.dH);
    if (!(std::abs(f.T) >= sys.temperature_floor())) {
        throw ZeroTemperature(f.T);
    }
    f.velocity = l.p_of(f.dH);
    f.mu = l.N_of(f.dH);
    f.friction = sys.friction(l.q_of(x), f.velocity, l.S_of(x));
    f.flux = sys.flux(l.S_of(x), l.N_of(x), f.mu);
    f.power = f.friction.dot(f.velocity) + flux_contraction(f.flux, f.mu);
    return f;
}

Vector chemical_potentials(const HamiltonianSystem& sys, const Vector& x)
{
    const StateLayout& l = sys.layout();
    if (l.K == 0) {
        throw NoCompartments();
    }
    return l.N_of(sys.hamiltonian().gradient(x));
}

namespace {

Matrix velocity_hessian(const LagrangianSystem& lag, const Vector& z)
{
    if (lag.velocity_hessian) {
        return lag.velocity_hessian(z);
    }
    const StateLayout& l = lag.layout;
    static const double base_step = std::cbrt(std::numeric_limits<double>::epsilon());
    Matrix M(l.n, l.n);
    Vector probe = z;
    for (Index j = 0; j < l.n; ++j) {
        const Index col = l.p() + j;
        const double step = std::max(1.0, std::abs(z[col])) * base_step;
        probe[col] = z[col] + step;
        const double up = probe[col];
        const Vector g_up = l.p_of(lag.lagrangian.gradient(probe));
        probe[col] = z[col] - step;
        const double down = probe[col];
        const Vector g_down = l.p_of(lag.lagrangian.gradient(probe));
        probe[col] = z[col];
        M.col(j) = (g_up - g_down) / (up - down);
    }
    return M;
}

}  // namespace

Vector legendre_velocity(const LagrangianSystem& lag, const Vector& x)
{
    constexpr int max_iterations = 50;
    const StateLayout& l = lag.layout;
    if (x.size() != l.dim()) {
        throw DimensionMismatch("state does not match the Lagrangian layout");
    }
    const Vector p = l.p_of(x);
    const double tolerance = 1e-12 * std::max(1.0, p.cwiseAbs().maxCoeff());

    Vector z = x;
    if (lag.velocity_seed) {
        z.segment(l.p(), l.n) = lag.velocity_seed(x);
    }
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= max_iterations; ++it) {
        const Vector r = l.p_of(lag.lagrangian.gradient(z)) - p;
        residual = r.cwiseAbs().maxCoeff();
        if (!std::isfinite(residual)) {
            break;
        }
        if (residual <= tolerance) {
            return l.p_of(z);
        }
        if (it == max_iterations) {
            break;
        }
        Eigen::FullPivLU<Matrix> lu(velocity_hessian(lag, z));
        if (!lu.isInvertible()) {
            break;
        }
        z.segment(l.p(), l.n) -= lu.solve(r);
    }
    throw HyperregularityFailure(max_iterations, residual);
}

HamiltonianSystem legendre_to_hamiltonian(const LagrangianSystem& lag)
{
    auto shared = std::make_shared<const LagrangianSystem>(lag);
    const StateLayout l = lag.layout;

    auto value = [shared, l](const Vector& x) {
        Vector z = x;
        const Vector v = legendre_velocity(*shared, x);
        z.segment(l.p(), l.n) = v;
        return l.p_of(x).dot(v) - shared->lagrangian(z);
    };

    HamiltonianDefinition def;
    def.name = lag.name;
    def.layout = l;
    if (lag.lagrangian.mode() == GradientMode::Analytic) {
        def.hamiltonian = Observable(value, [shared, l](const Vector& x) {
            Vector z = x;
            const Vector v = legendre_velocity(*shared, x);
            z.segment(l.p(), l.n) = v;
            Vector dH = -shared->lagrangian.gradient(z);
            dH.segment(l.p(), l.n) = v;
            return dH;
        });
    } else {
        def.hamiltonian = Observable(value);
    }
    def.friction = lag.friction;
    def.flux = lag.flux;
    def.external_force = lag.external_force;
    def.linear_transport = lag.linear_transport;
    def.audit_box = lag.audit_box;
    return HamiltonianSystem(std::move(def));
}

}  // namespace metriplex
