#pragma once

#include "qig/state_space.hpp"

namespace qig {

// Invertible element acting on the cone by conjugation.
class GLElement {
public:
    GLElement() = default;
    explicit GLElement(const ComplexMatrix& g,
                       const Tolerances& tol = Tolerances::defaults());

    int dim() const { return g_.dim(); }
    const ComplexMatrix& matrix() const { return g_; }

private:
    ComplexMatrix g_;
};

GLElement compose(const GLElement& g, const GLElement& h);

// Pair (U, a): unitary part and Hermitian translation part, the group
// operating on log coordinates by conjugate-then-translate.
class CotangentElement {
public:
    CotangentElement() = default;
    CotangentElement(const ComplexMatrix& u, const HermitianMatrix& a,
                     const Tolerances& tol = Tolerances::defaults());

    int dim() const { return u_.dim(); }
    const ComplexMatrix& unitary() const { return u_; }
    const HermitianMatrix& translation() const { return a_; }

private:
    ComplexMatrix u_;
    HermitianMatrix a_;
};

// (U1, a1) * (U2, a2) = (U1 U2, a1 + U1 a2 U1^*)
CotangentElement compose(const CotangentElement& x, const CotangentElement& y);

// Direction (a, b) through the identity: a drives the symmetrized part of a
// one-parameter curve, b the unitary part.
struct LieDirection {
    HermitianMatrix a;
    HermitianMatrix b;
};

// Deformation strength for the power-deformed actions.
struct DeformationParam {
    explicit DeformationParam(double k);
    double kappa = 1.0;
    bool beyond_monotone = false; // kappa > 1: paired metric loses monotonicity
};

// Unitary conjugation.
DensityState act_alpha(const ComplexMatrix& u, const DensityState& rho,
                       const Tolerances& tol = Tolerances::defaults());
PositiveOperator act_alpha(const ComplexMatrix& u, const PositiveOperator& omega,
                           const Tolerances& tol = Tolerances::defaults());

// g omega g^* on the cone.
PositiveOperator act_beta_hat(const GLElement& g, const PositiveOperator& omega);

// normalized conjugation on states.
DensityState act_beta(const GLElement& g, const DensityState& rho);

// normalized ((g rho^kappa g^*)^{1/kappa}).
DensityState act_beta_deformed(const GLElement& g, const DensityState& rho,
                               const DeformationParam& k);

// exp(U log(omega) U^* + a) on the cone.
PositiveOperator act_gamma_hat(const CotangentElement& e, const PositiveOperator& omega);

// its normalization to states.
DensityState act_gamma(const CotangentElement& e, const DensityState& rho);

// normalized exp(U log(rho) U^* + a/kappa).
DensityState act_gamma_deformed(const CotangentElement& e, const DensityState& rho,
                                const DeformationParam& k);

// affine action U x U^* + a on Hermitian matrices (log coordinates).
HermitianMatrix act_zeta(const CotangentElement& e, const HermitianMatrix& x);

// Fundamental fields.
TangentVector fund_X_hat(const Observable& b, const PositiveOperator& omega);
TangentVector fund_X(const Observable& b, const DensityState& rho);
TangentVector fund_Y_hat(const Observable& a, const PositiveOperator& omega);
TangentVector fund_Y(const Observable& a, const DensityState& rho);
TangentVector fund_W_hat(const Observable& a, const PositiveOperator& omega);
TangentVector fund_W(const Observable& a, const DensityState& rho);
TangentVector fund_W_deformed(const Observable& a, const DensityState& rho,
                              const DeformationParam& k);
TangentVector fund_Z_hat(const Observable& a, const PositiveOperator& omega,
                         const DeformationParam& k);
TangentVector fund_Z(const Observable& a, const DensityState& rho, const DeformationParam& k);

enum class ActionKind { Alpha, BetaHat, Beta, BetaDeformed, GammaHat, Gamma, GammaDeformed, Zeta };

struct ActionSpec {
    ActionKind kind = ActionKind::Beta;
    double kappa = 1.0;
};

ActionKind parse_action(const std::string& name);

// Central difference along the one-parameter curve generated by dir.
TangentVector flow_fundamental_numeric(const ActionSpec& spec, const LieDirection& dir,
                                       const DensityState& rho,
                                       double h = Tolerances::defaults().fd_step);
TangentVector flow_fundamental_numeric(const ActionSpec& spec, const LieDirection& dir,
                                       const PositiveOperator& omega,
                                       double h = Tolerances::defaults().fd_step);
HermitianMatrix flow_fundamental_numeric_zeta(const LieDirection& dir, const HermitianMatrix& x,
                                              double h = Tolerances::defaults().fd_step);

// exp(i s b) through the eigenbasis of b.
ComplexMatrix exp_i_scaled(const HermitianMatrix& b, double s);

// Element connecting two states under the normalized conjugation action:
// act_beta(connecting_element(from, to), from) == to.
GLElement connecting_element(const DensityState& from, const DensityState& to);

} // namespace qig
