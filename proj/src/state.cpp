#include "metriplex/state.hpp"

#include <cmath>

#include "metriplex/errors.hpp"

namespace metriplex {

void StateLayout::validate() const
{
    if (n < 1) {
        throw InvalidArgument("state layout needs at least one mechanical degree of freedom");
    }
    if (K < 0) {
        throw InvalidArgument("negative compartment count");
    }
}

Vector ThermoMechState::flatten() const
{
    const StateLayout l = layout();
    Vector x(l.dim());
    x.segment(l.q(), l.n) = q;
    x.segment(l.p(), l.n) = p;
    x[l.S()] = S;
    x.segment(l.N(), l.K) = N;
    return x;
}

ThermoMechState ThermoMechState::unflatten(const StateLayout& layout, const Vector& x)
{
    if (x.size() != layout.dim()) {
        throw DimensionMismatch("flat state does not match layout");
    }
    return {layout.q_of(x), layout.p_of(x), layout.S_of(x), layout.N_of(x)};
}

bool ThermoMechState::valid() const
{
    return q.size() >= 1 && p.size() == q.size() && q.allFinite() && p.allFinite() && std::isfinite(S)
        && N.allFinite();
}

StateBox StateBox::standard(const StateLayout& layout)
{
    StateBox box{Vector::Constant(layout.dim(), -1.0), Vector::Constant(layout.dim(), 1.0)};
    box.lower.segment(layout.N(), layout.K).setConstant(0.5);
    box.upper.segment(layout.N(), layout.K).setConstant(2.0);
    return box;
}

Vector ReducedState::flatten() const
{
    const ReducedLayout l = layout();
    Vector x(l.dim());
    x.segment(l.mu(), l.d) = mu;
    x.segment(l.n(), l.m) = n;
    x[l.S()] = S;
    return x;
}

ReducedState ReducedState::unflatten(const ReducedLayout& layout, const Vector& x)
{
    if (x.size() != layout.dim()) {
        throw DimensionMismatch("flat reduced state does not match layout");
    }
    return {layout.mu_of(x), layout.n_of(x), layout.S_of(x)};
}

}  // namespace metriplex
