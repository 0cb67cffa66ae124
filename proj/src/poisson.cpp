#include "metriplex/poisson.hpp"

#include <memory>

#include "metriplex/errors.hpp"

namespace metriplex {

PoissonStructure::PoissonStructure(std::string name, Index dim, TensorMap tensor)
    : name_(std::move(name)), dim_(dim), tensor_(std::move(tensor))
{
}

Matrix PoissonStructure::tensor(const Vector& x) const
{
    if (x.size() != dim_) {
        throw DimensionMismatch(name_ + ": point has the wrong dimension");
    }
    return tensor_(x);
}

double PoissonStructure::evaluate(const Vector& dF, const Vector& dG, const Vector& x) const
{
    return dF.dot(tensor(x) * dG);
}

double PoissonStructure::evaluate(const Observable& F, const Observable& G, const Vector& x) const
{
    return evaluate(F.gradient(x), G.gradient(x), x);
}

Vector PoissonStructure::apply(const Vector& x, const Vector& covector) const
{
    return tensor(x) * covector;
}

Vector PoissonStructure::hamiltonian_field(const Observable& H, const Vector& x) const
{
    return apply(x, H.gradient(x));
}

Observable PoissonStructure::bracket_observable(const Observable& F, const Observable& G) const
{
    auto self = std::make_shared<const PoissonStructure>(*this);
    return Observable([self, F, G](const Vector& x) { return self->evaluate(F, G, x); });
}

PoissonStructure canonical_poisson(Index n, Index K)
{
    if (n < 1 || K < 0) {
        throw InvalidArgument("canonical_poisson: need n >= 1 and K >= 0");
    }
    Matrix P = Matrix::Zero(2 * n + 1 + K, 2 * n + 1 + K);
    P.block(0, n, n, n) = Matrix::Identity(n, n);
    P.block(n, 0, n, n) = -Matrix::Identity(n, n);
    return PoissonStructure("canonical", P.rows(), [P](const Vector&) { return P; });
}

}  // namespace metriplex
