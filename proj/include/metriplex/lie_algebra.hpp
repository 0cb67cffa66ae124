#pragma once

#include <string>
#include <vector>

#include "metriplex/observable.hpp"

namespace metriplex {

/// Finite-dimensional real Lie algebra in a fixed basis e_1..e_d, encoded by
/// structure constants [e_i, e_j] = sum_k c^k_{ij} e_k, with the coordinate
/// duality pairing on g* and an inner product gamma defining the sharp map.
class LieAlgebra {
public:
    enum class Validation { Enforce, Skip };

    /// structure[k](i, j) = c^k_{ij}. With Validation::Enforce the constants
    /// must be antisymmetric and satisfy Jacobi to 1e-12 on basis triples;
    /// Skip exists to build deliberately broken algebras for negative tests.
    LieAlgebra(std::string name, std::vector<Matrix> structure, Matrix gamma,
               Validation validation = Validation::Enforce);
    LieAlgebra(std::string name, std::vector<Matrix> structure, Validation validation = Validation::Enforce);

    /// Converts a bracket closure to structure constants by evaluating it on basis pairs.
    static LieAlgebra from_bracket(std::string name, Index dim,
                                   const std::function<Vector(const Vector&, const Vector&)>& bracket,
                                   Matrix gamma, Validation validation = Validation::Enforce);

    /// so(3) with the cross product.
    static LieAlgebra so3(Matrix gamma = Matrix::Identity(3, 3));
    /// se(2) in the basis (rotation, x-translation, y-translation).
    static LieAlgebra se2(Matrix gamma = Matrix::Identity(3, 3));
    static LieAlgebra abelian(Index dim);

    const std::string& name() const noexcept { return name_; }
    Index dim() const noexcept { return static_cast<Index>(structure_.size()); }
    const std::vector<Matrix>& structure_constants() const noexcept { return structure_; }
    const Matrix& gamma() const noexcept { return gamma_; }

    Vector bracket(const Vector& xi, const Vector& eta) const;
    /// <ad*_xi mu, eta> = <mu, [xi, eta]> for all eta.
    Vector ad_star(const Vector& xi, const Vector& mu) const;
    double pairing(const Vector& mu, const Vector& xi) const;
    /// gamma^{-1} mu.
    Vector sharp(const Vector& mu) const;
    double inner(const Vector& xi, const Vector& eta) const { return xi.dot(gamma_ * eta); }

    /// M(mu)_{ij} = sum_k mu_k c^k_{ij}; the Lie-Poisson tensor is -M(mu).
    Matrix contracted(const Vector& mu) const;

    /// max over basis triples of |[[e_i,e_j],e_k] + cyclic|.
    double jacobi_defect() const;
    double antisymmetry_defect() const;

private:
    void check_dim(const Vector& v, const char* what) const;

    std::string name_;
    std::vector<Matrix> structure_;
    Matrix gamma_;
    Eigen::LLT<Matrix> gamma_factor_;
};

}  // namespace metriplex
