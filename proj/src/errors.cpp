#include "metriplex/errors.hpp"

#include <sstream>

namespace metriplex {

namespace {

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

NonFiniteEvaluation::NonFiniteEvaluation(std::size_t coordinate)
    : Error("non-finite function value while differentiating along coordinate " + std::to_string(coordinate)),
      coordinate_(coordinate)
{
}

GradientMismatch::GradientMismatch(const std::string& what, double relative_error)
    : Error(what + " (relative error " + format_double(relative_error) + ")"), relative_error_(relative_error)
{
}

HyperregularityFailure::HyperregularityFailure(int iterations, double residual)
    : Error("Legendre transform: Newton did not converge in " + std::to_string(iterations)
            + " iterations (residual " + format_double(residual) + ")"),
      residual_(residual)
{
}

NoCompartments::NoCompartments() : Error("system has no compartments (K = 0)") {}

ZeroTemperature::ZeroTemperature(double temperature, std::optional<double> time)
    : Error("temperature dH/dS = " + format_double(temperature) + " is below the floor"
            + (time ? " at t = " + format_double(*time) : std::string())),
      temperature_(temperature),
      time_(time)
{
}

MissingLinearTransport::MissingLinearTransport()
    : Error("metriplectic bracket requires linear flux-force relations")
{
}

DivergedAt::DivergedAt(double time) : Error("integration diverged at t = " + format_double(time)), time_(time) {}

NegativeMoles::NegativeMoles(std::size_t compartment, double time)
    : Error("mole number of compartment " + std::to_string(compartment + 1) + " became negative at t = "
            + format_double(time))
{
}

UnknownScenario::UnknownScenario(const std::string& name) : Error("unknown scenario '" + name + "'") {}

}  // namespace metriplex
