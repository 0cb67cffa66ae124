#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace metriplex {

/// Seeded generator whose output is identical on every platform.
///
/// std::uniform_real_distribution is implementation-defined, so doubles are
/// built directly from the 53 high bits of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Eigen::VectorXd uniform_vector(Eigen::Index size, double lo, double hi)
    {
        Eigen::VectorXd v(size);
        for (Eigen::Index i = 0; i < size; ++i) {
            v[i] = uniform(lo, hi);
        }
        return v;
    }

    Eigen::VectorXd uniform_vector(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi)
    {
        Eigen::VectorXd v(lo.size());
        for (Eigen::Index i = 0; i < lo.size(); ++i) {
            v[i] = uniform(lo[i], hi[i]);
        }
        return v;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace metriplex
