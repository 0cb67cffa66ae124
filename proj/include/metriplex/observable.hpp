#pragma once

#include <functional>

#include <Eigen/Dense>

#include "metriplex/random.hpp"

namespace metriplex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

using ScalarMap = std::function<double(const Vector&)>;
using GradientMap = std::function<Vector(const Vector&)>;

enum class GradientMode { Analytic, FiniteDifference };

const char* to_string(GradientMode mode);

/// Central-difference gradient with step scale[i] * cbrt(eps) per coordinate.
///
/// Throws NonFiniteEvaluation naming the coordinate whose perturbation
/// produced a non-finite value.
Vector fd_gradient(const ScalarMap& f, const Vector& x, const Vector& scale);

/// Same, with step hints max(1, |x_i|).
Vector fd_gradient(const ScalarMap& f, const Vector& x);

/// A smooth scalar function on a flat coordinate vector, together with its
/// differential. When no analytic gradient is supplied the differential is
/// taken by central differences.
///
/// The meaning of the coordinates is fixed by the layout of whatever system
/// the observable is used with (see StateLayout / ReducedLayout).
class Observable {
public:
    Observable(ScalarMap value, GradientMap gradient);
    explicit Observable(ScalarMap value);

    double operator()(const Vector& x) const { return value_(x); }
    Vector gradient(const Vector& x) const;
    GradientMode mode() const noexcept { return gradient_ ? GradientMode::Analytic : GradientMode::FiniteDifference; }

    const ScalarMap& value_map() const noexcept { return value_; }

    /// The same function with its analytic gradient discarded.
    Observable without_gradient() const { return Observable(value_); }

    static Observable constant(double c);
    static Observable coordinate(Index dim, Index i);

    /// c + <b, x> + 1/2 x^T A x, with A symmetrized.
    static Observable quadratic(double c, Vector b, Matrix A);

    /// Quadratic with every coefficient uniform on [-1, 1].
    static Observable random_quadratic(Rng& rng, Index dim);

private:
    ScalarMap value_;
    GradientMap gradient_;
};

Observable operator*(const Observable& f, const Observable& g);
Observable operator+(const Observable& f, const Observable& g);
Observable operator*(double a, const Observable& f);

/// max_i |analytic_i - fd_i| / max(1, max_i |fd_i|).
double gradient_relative_error(const Observable& f, const Vector& x);

}  // namespace metriplex
