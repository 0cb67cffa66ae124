#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace metriplex {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A scalar map returned NaN or infinity while being differentiated.
class NonFiniteEvaluation : public Error {
public:
    explicit NonFiniteEvaluation(std::size_t coordinate);
    std::size_t coordinate() const noexcept { return coordinate_; }

private:
    std::size_t coordinate_;
};

/// Analytic gradient disagrees with central finite differences.
class GradientMismatch : public Error {
public:
    GradientMismatch(const std::string& what, double relative_error);
    double relative_error() const noexcept { return relative_error_; }

private:
    double relative_error_;
};

/// Newton iteration for the fiber derivative did not converge.
class HyperregularityFailure : public Error {
public:
    HyperregularityFailure(int iterations, double residual);
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class NoCompartments : public Error {
public:
    NoCompartments();
};

/// |dH/dS| fell below the temperature floor; the dissipative formulas divide by it.
class ZeroTemperature : public Error {
public:
    explicit ZeroTemperature(double temperature, std::optional<double> time = std::nullopt);
    double temperature() const noexcept { return temperature_; }
    const std::optional<double>& time() const noexcept { return time_; }

private:
    double temperature_;
    std::optional<double> time_;
};

class MissingLinearTransport : public Error {
public:
    MissingLinearTransport();
};

/// Integration produced a non-finite state.
class DivergedAt : public Error {
public:
    explicit DivergedAt(double time);
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// A mole number became negative while the abort policy was active.
class NegativeMoles : public Error {
public:
    NegativeMoles(std::size_t compartment, double time);
};

class UnknownScenario : public Error {
public:
    explicit UnknownScenario(const std::string& name);
};

}  // namespace metriplex
