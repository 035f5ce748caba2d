#include "qig/tolerances.hpp"

namespace qig {

const Tolerances& Tolerances::defaults() {
    static const Tolerances t{};
    return t;
}

Tolerances Tolerances::scaled(double s) const {
    Tolerances t = *this;
    t.analytic_residual *= s;
    t.numeric_residual *= s;
    t.bracket_residual *= s;
    t.invariance_residual *= s;
    t.reduction_residual *= s;
    t.structural_residual *= s;
    t.exact_identity_residual *= s;
    t.transport_residual *= s;
    t.special_value_residual *= s;
    t.derivative_limit_residual *= s;
    t.witness_threshold *= s;
    t.contraction_floor *= s;
    return t;
}

} // namespace qig
