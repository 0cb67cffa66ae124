#include "metriplex/observable.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "metriplex/errors.hpp"

namespace metriplex {

const char* to_string(GradientMode mode)
{
    return mode == GradientMode::Analytic ? "analytic" : "finite-difference";
}

Vector fd_gradient(const ScalarMap& f, const Vector& x, const Vector& scale)
{
    if (scale.size() != x.size()) {
        throw DimensionMismatch("fd_gradient: scale and point differ in length");
    }
    static const double base_step = std::cbrt(std::numeric_limits<double>::epsilon());

    Vector grad(x.size());
    Vector probe = x;
    for (Index i = 0; i < x.size(); ++i) {
        if (!(scale[i] > 0.0)) {
            throw InvalidArgument("fd_gradient: step scale must be positive");
        }
        const double step = scale[i] * base_step;
        probe[i] = x[i] + step;
        const double up = probe[i];
        const double f_up = f(probe);
        probe[i] = x[i] - step;
        const double down = probe[i];
        const double f_down = f(probe);
        probe[i] = x[i];
        if (!std::isfinite(f_up) || !std::isfinite(f_down)) {
            throw NonFiniteEvaluation(static_cast<std::size_t>(i));
        }
        // representable step, not the nominal one
        grad[i] = (f_up - f_down) / (up - down);
    }
    return grad;
}

Vector fd_gradient(const ScalarMap& f, const Vector& x)
{
    return fd_gradient(f, x, x.cwiseAbs().cwiseMax(1.0));
}

Observable::Observable(ScalarMap value, GradientMap gradient)
    : value_(std::move(value)), gradient_(std::move(gradient))
{
}

Observable::Observable(ScalarMap value) : value_(std::move(value)) {}

Vector Observable::gradient(const Vector& x) const
{
    if (gradient_) {
        return gradient_(x);
    }
    return fd_gradient(value_, x);
}

Observable Observable::constant(double c)
{
    return Observable([c](const Vector&) { return c; },
                      [](const Vector& x) { return Vector::Zero(x.size()).eval(); });
}

Observable Observable::coordinate(Index dim, Index i)
{
    if (i < 0 || i >= dim) {
        throw DimensionMismatch("coordinate observable index out of range");
    }
    return Observable([i](const Vector& x) { return x[i]; },
                      [dim, i](const Vector&) { return Vector::Unit(dim, i).eval(); });
}

Observable Observable::quadratic(double c, Vector b, Matrix A)
{
    if (A.rows() != b.size() || A.cols() != b.size()) {
        throw DimensionMismatch("quadratic observable: coefficient shapes disagree");
    }
    auto sym = std::make_shared<const Matrix>(0.5 * (A + A.transpose()));
    auto lin = std::make_shared<const Vector>(std::move(b));
    return Observable(
        [c, lin, sym](const Vector& x) { return c + lin->dot(x) + 0.5 * x.dot(*sym * x); },
        [lin, sym](const Vector& x) { return (*lin + *sym * x).eval(); });
}

Observable Observable::random_quadratic(Rng& rng, Index dim)
{
    const double c = rng.uniform(-1.0, 1.0);
    Vector b = rng.uniform_vector(dim, -1.0, 1.0);
    Matrix A(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            A(i, j) = rng.uniform(-1.0, 1.0);
        }
    }
    return quadratic(c, std::move(b), std::move(A));
}

Observable operator*(const Observable& f, const Observable& g)
{
    auto value = [f, g](const Vector& x) { return f(x) * g(x); };
    if (f.mode() == GradientMode::Analytic && g.mode() == GradientMode::Analytic) {
        return Observable(value, [f, g](const Vector& x) {
            return (f(x) * g.gradient(x) + g(x) * f.gradient(x)).eval();
        });
    }
    return Observable(value);
}

Observable operator+(const Observable& f, const Observable& g)
{
    auto value = [f, g](const Vector& x) { return f(x) + g(x); };
    if (f.mode() == GradientMode::Analytic && g.mode() == GradientMode::Analytic) {
        return Observable(value, [f, g](const Vector& x) { return (f.gradient(x) + g.gradient(x)).eval(); });
    }
    return Observable(value);
}

Observable operator*(double a, const Observable& f)
{
    auto value = [a, f](const Vector& x) { return a * f(x); };
    if (f.mode() == GradientMode::Analytic) {
        return Observable(value, [a, f](const Vector& x) { return (a * f.gradient(x)).eval(); });
    }
    return Observable(value);
}

double gradient_relative_error(const Observable& f, const Vector& x)
{
    const Vector fd = fd_gradient(f.value_map(), x);
    const Vector an = f.gradient(x);
    const double denom = std::max(1.0, fd.cwiseAbs().maxCoeff());
    return (an - fd).cwiseAbs().maxCoeff() / denom;
}

}  // namespace metriplex
