#pragma once

#include "metriplex/observable.hpp"

namespace metriplex {

/// Flat coordinates of T*Q x R^{K+1}: [q (n), p (n), S, N (K)].
///
/// Observables, gradients and tangent vectors of the unreduced system all use
/// this ordering.
struct StateLayout {
    Index n = 1;  // mechanical degrees of freedom
    Index K = 0;  // compartments

    Index dim() const noexcept { return 2 * n + 1 + K; }
    Index q() const noexcept { return 0; }
    Index p() const noexcept { return n; }
    Index S() const noexcept { return 2 * n; }
    Index N() const noexcept { return 2 * n + 1; }

    auto q_of(const Vector& x) const { return x.segment(q(), n); }
    auto p_of(const Vector& x) const { return x.segment(p(), n); }
    double S_of(const Vector& x) const { return x[S()]; }
    auto N_of(const Vector& x) const { return x.segment(N(), K); }

    void validate() const;
    bool operator==(const StateLayout&) const = default;
};

struct ThermoMechState {
    Vector q;
    Vector p;
    double S = 0.0;
    Vector N;

    StateLayout layout() const { return {q.size(), N.size()}; }
    Vector flatten() const;
    static ThermoMechState unflatten(const StateLayout& layout, const Vector& x);

    /// Finite entries, matching q/p lengths, n >= 1.
    bool valid() const;
};

/// Axis-aligned box used to draw random audit states.
struct StateBox {
    Vector lower;
    Vector upper;

    Vector sample(Rng& rng) const { return rng.uniform_vector(lower, upper); }

    /// q, p, S in [-1, 1] and N in [0.5, 2].
    static StateBox standard(const StateLayout& layout);
};

/// Flat coordinates of g* x N x R: [mu (d), n (m), S].
struct ReducedLayout {
    Index d = 3;  // Lie algebra dimension
    Index m = 0;  // embedding dimension of the quotient space

    Index dim() const noexcept { return d + m + 1; }
    Index mu() const noexcept { return 0; }
    Index n() const noexcept { return d; }
    Index S() const noexcept { return d + m; }

    auto mu_of(const Vector& x) const { return x.segment(mu(), d); }
    auto n_of(const Vector& x) const { return x.segment(n(), m); }
    double S_of(const Vector& x) const { return x[S()]; }

    bool operator==(const ReducedLayout&) const = default;
};

struct ReducedState {
    Vector mu;
    Vector n;
    double S = 0.0;

    ReducedLayout layout() const { return {mu.size(), n.size()}; }
    Vector flatten() const;
    static ReducedState unflatten(const ReducedLayout& layout, const Vector& x);
};

}  // namespace metriplex
