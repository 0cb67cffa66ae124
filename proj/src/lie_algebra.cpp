#include "metriplex/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "metriplex/errors.hpp"

namespace metriplex {

LieAlgebra::LieAlgebra(std::string name, std::vector<Matrix> structure, Matrix gamma, Validation validation)
    : name_(std::move(name)), structure_(std::move(structure)), gamma_(std::move(gamma))
{
    const Index d = dim();
    if (d < 1) {
        throw InvalidArgument(name_ + ": Lie algebra must have positive dimension");
    }
    for (const Matrix& c : structure_) {
        if (c.rows() != d || c.cols() != d) {
            throw DimensionMismatch(name_ + ": structure constants must be d matrices of size d x d");
        }
    }
    if (gamma_.rows() != d || gamma_.cols() != d) {
        throw DimensionMismatch(name_ + ": inner product has the wrong size");
    }
    if ((gamma_ - gamma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, gamma_.cwiseAbs().maxCoeff())) {
        throw InvalidArgument(name_ + ": inner product is not symmetric");
    }
    gamma_factor_.compute(gamma_);
    if (gamma_factor_.info() != Eigen::Success
        || Eigen::SelfAdjointEigenSolver<Matrix>(gamma_).eigenvalues().minCoeff() <= 0.0) {
        throw InvalidArgument(name_ + ": inner product is not positive definite");
    }
    if (validation == Validation::Enforce) {
        if (antisymmetry_defect() > 1e-12) {
            throw InvalidArgument(name_ + ": structure constants are not antisymmetric");
        }
        if (jacobi_defect() > 1e-12) {
            throw InvalidArgument(name_ + ": structure constants violate the Jacobi identity");
        }
    }
}

LieAlgebra::LieAlgebra(std::string name, std::vector<Matrix> structure, Validation validation)
    : LieAlgebra(std::move(name), structure, Matrix::Identity(static_cast<Index>(structure.size()),
                                                              static_cast<Index>(structure.size())),
                 validation)
{
}

LieAlgebra LieAlgebra::from_bracket(std::string name, Index dim,
                                    const std::function<Vector(const Vector&, const Vector&)>& bracket, Matrix gamma,
                                    Validation validation)
{
    std::vector<Matrix> c(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim));
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            const Vector b = bracket(Vector::Unit(dim, i), Vector::Unit(dim, j));
            if (b.size() != dim) {
                throw DimensionMismatch("bracket closure returned the wrong length");
            }
            for (Index k = 0; k < dim; ++k) {
                c[static_cast<std::size_t>(k)](i, j) = b[k];
            }
        }
    }
    return LieAlgebra(std::move(name), std::move(c), std::move(gamma), validation);
}

LieAlgebra LieAlgebra::so3(Matrix gamma)
{
    std::vector<Matrix> c(3, Matrix::Zero(3, 3));
    for (Index i = 0; i < 3; ++i) {
        const Index j = (i + 1) % 3;
        const Index k = (i + 2) % 3;
        c[static_cast<std::size_t>(k)](i, j) = 1.0;
        c[static_cast<std::size_t>(k)](j, i) = -1.0;
    }
    return LieAlgebra("so3", std::move(c), std::move(gamma));
}

LieAlgebra LieAlgebra::se2(Matrix gamma)
{
    // [e_theta, e_x] = e_y, [e_theta, e_y] = -e_x, [e_x, e_y] = 0
    std::vector<Matrix> c(3, Matrix::Zero(3, 3));
    c[2](0, 1) = 1.0;
    c[2](1, 0) = -1.0;
    c[1](0, 2) = -1.0;
    c[1](2, 0) = 1.0;
    return LieAlgebra("se2", std::move(c), std::move(gamma));
}

LieAlgebra LieAlgebra::abelian(Index dim)
{
    return LieAlgebra("abelian", std::vector<Matrix>(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim)));
}

void LieAlgebra::check_dim(const Vector& v, const char* what) const
{
    if (v.size() != dim()) {
        throw DimensionMismatch(name_ + ": " + what + " has length " + std::to_string(v.size()) + ", expected "
                                + std::to_string(dim()));
    }
}

Vector LieAlgebra::bracket(const Vector& xi, const Vector& eta) const
{
    check_dim(xi, "bracket argument");
    check_dim(eta, "bracket argument");
    Vector out(dim());
    for (Index k = 0; k < dim(); ++k) {
        out[k] = xi.dot(structure_[static_cast<std::size_t>(k)] * eta);
    }
    return out;
}

Matrix LieAlgebra::contracted(const Vector& mu) const
{
    check_dim(mu, "covector");
    Matrix M = Matrix::Zero(dim(), dim());
    for (Index k = 0; k < dim(); ++k) {
        M += mu[k] * structure_[static_cast<std::size_t>(k)];
    }
    return M;
}

Vector LieAlgebra::ad_star(const Vector& xi, const Vector& mu) const
{
    check_dim(xi, "algebra element");
    return contracted(mu).transpose() * xi;
}

double LieAlgebra::pairing(const Vector& mu, const Vector& xi) const
{
    check_dim(mu, "covector");
    check_dim(xi, "algebra element");
    return mu.dot(xi);
}

Vector LieAlgebra::sharp(const Vector& mu) const
{
    check_dim(mu, "covector");
    return gamma_factor_.solve(mu);
}

double LieAlgebra::jacobi_defect() const
{
    const Index d = dim();
    double worst = 0.0;
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            for (Index k = 0; k < d; ++k) {
                const Vector a = Vector::Unit(d, i);
                const Vector b = Vector::Unit(d, j);
                const Vector c = Vector::Unit(d, k);
                const Vector r = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b);
                worst = std::max(worst, r.cwiseAbs().maxCoeff());
            }
        }
    }
    return worst;
}

double LieAlgebra::antisymmetry_defect() const
{
    double worst = 0.0;
    for (const Matrix& c : structure_) {
        worst = std::max(worst, (c + c.transpose()).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace metriplex
