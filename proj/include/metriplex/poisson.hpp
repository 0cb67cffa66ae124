#pragma once

#include <string>

#include "metriplex/observable.hpp"

namespace metriplex {

/// Poisson bracket {F, G}(x) = <dF, P(x) dG> given by its tensor P: T*M -> TM
/// in flat coordinates.
class PoissonStructure {
public:
    using TensorMap = std::function<Matrix(const Vector&)>;

    PoissonStructure(std::string name, Index dim, TensorMap tensor);

    const std::string& name() const noexcept { return name_; }
    Index dim() const noexcept { return dim_; }

    Matrix tensor(const Vector& x) const;
    double evaluate(const Observable& F, const Observable& G, const Vector& x) const;
    double evaluate(const Vector& dF, const Vector& dG, const Vector& x) const;

    /// P(x) applied to a covector.
    Vector apply(const Vector& x, const Vector& covector) const;

    /// X_H = P dH.
    Vector hamiltonian_field(const Observable& H, const Vector& x) const;

    /// {F, G} as an observable in its own right; its gradient is taken by
    /// finite differences, which is what nested (Jacobi) brackets need.
    Observable bracket_observable(const Observable& F, const Observable& G) const;

private:
    std::string name_;
    Index dim_;
    TensorMap tensor_;
};

/// Canonical bracket on T*Q plus the zero bracket on the (S, N) directions,
/// in the flat ordering [q, p, S, N].
PoissonStructure canonical_poisson(Index n, Index K);

}  // namespace metriplex
