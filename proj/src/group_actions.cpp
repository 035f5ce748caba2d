#include "qig/group_actions.hpp"

#include <cmath>
#include <sstream>

namespace qig {

GLElement::GLElement(const ComplexMatrix& g, const Tolerances& tol) : g_(g) {
    ComplexMatrix gram = g.adjoint() * g;
    ComplexMatrix sym(g.dim());
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
            sym(i, j) = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
    SpectralDecomposition s = hermitian_eig(HermitianMatrix(sym));
    const double smin = std::sqrt(std::max(0.0, s.eigenvalues.front()));
    if (smin <= tol.invertibility) {
        std::ostringstream os;
        os << "group element is numerically singular: smallest singular value " << smin;
        throw ConditioningError(os.str());
    }
}

GLElement compose(const GLElement& g, const GLElement& h) {
    return GLElement(g.matrix() * h.matrix());
}

static void require_unitary(const ComplexMatrix& u, const Tolerances& tol) {
    ComplexMatrix gram = u.adjoint() * u;
    const double dev = max_abs_diff(gram, ComplexMatrix::identity(u.dim()));
    if (dev > tol.unitarity) {
        std::ostringstream os;
        os << "matrix is not unitary: |U^*U - I| = " << dev;
        throw DomainError(os.str());
    }
}

CotangentElement::CotangentElement(const ComplexMatrix& u, const HermitianMatrix& a,
                                   const Tolerances& tol)
    : u_(u), a_(a) {
    if (u.dim() != a.dim())
        throw DimensionError("unitary and translation dimensions disagree");
    require_unitary(u, tol);
}

CotangentElement compose(const CotangentElement& x, const CotangentElement& y) {
    ComplexMatrix u = x.unitary() * y.unitary();
    HermitianMatrix moved = conjugate_by(x.unitary(), y.translation());
    return CotangentElement(u, x.translation() + moved);
}

DeformationParam::DeformationParam(double k) : kappa(k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw DomainError("deformation parameter must be positive and finite");
    beyond_monotone = k > 1.0;
}

DensityState act_alpha(const ComplexMatrix& u, const DensityState& rho, const Tolerances& tol) {
    require_unitary(u, tol);
    return DensityState(conjugate_by(u, rho.hermitian()));
}

PositiveOperator act_alpha(const ComplexMatrix& u, const PositiveOperator& omega,
                           const Tolerances& tol) {
    require_unitary(u, tol);
    return PositiveOperator(conjugate_by(u, omega.hermitian()));
}

PositiveOperator act_beta_hat(const GLElement& g, const PositiveOperator& omega) {
    return PositiveOperator(conjugate_by(g.matrix(), omega.hermitian()));
}

DensityState act_beta(const GLElement& g, const DensityState& rho) {
    return project_to_states(act_beta_hat(g, immerse(rho)));
}

DensityState act_beta_deformed(const GLElement& g, const DensityState& rho,
                               const DeformationParam& k) {
    HermitianMatrix powered = matrix_power(rho.spectral(), k.kappa);
    PositiveOperator moved(conjugate_by(g.matrix(), powered));
    HermitianMatrix unpowered = matrix_power(moved.spectral(), 1.0 / k.kappa);
    return project_to_states(PositiveOperator(unpowered));
}

PositiveOperator act_gamma_hat(const CotangentElement& e, const PositiveOperator& omega) {
    HermitianMatrix logw = matrix_log(omega.spectral());
    HermitianMatrix moved = conjugate_by(e.unitary(), logw) + e.translation();
    return PositiveOperator(matrix_exp(moved));
}

DensityState act_gamma(const CotangentElement& e, const DensityState& rho) {
    return project_to_states(act_gamma_hat(e, immerse(rho)));
}

DensityState act_gamma_deformed(const CotangentElement& e, const DensityState& rho,
                                const DeformationParam& k) {
    HermitianMatrix logr = matrix_log(rho.spectral());
    HermitianMatrix moved =
        conjugate_by(e.unitary(), logr) + (1.0 / k.kappa) * e.translation();
    return project_to_states(PositiveOperator(matrix_exp(moved)));
}

HermitianMatrix act_zeta(const CotangentElement& e, const HermitianMatrix& x) {
    return conjugate_by(e.unitary(), x) + e.translation();
}

TangentVector fund_X_hat(const Observable& b, const PositiveOperator& omega) {
    return TangentVector(comm(omega.hermitian(), b), TangentVector::Kind::Cone);
}

TangentVector fund_X(const Observable& b, const DensityState& rho) {
    return TangentVector(comm(rho.hermitian(), b), TangentVector::Kind::StateSpace);
}

TangentVector fund_Y_hat(const Observable& a, const PositiveOperator& omega) {
    return TangentVector(anticomm(omega.hermitian(), a), TangentVector::Kind::Cone);
}

TangentVector fund_Y(const Observable& a, const DensityState& rho) {
    return tangent_project(anticomm(rho.hermitian(), a), rho);
}

// log-mean table: same cluster -> cluster mean, else (p_j - p_k)/log(p_j/p_k)
static std::vector<std::vector<double>> log_mean_table(const SpectralDecomposition& s) {
    const int n = s.dim();
    std::vector<std::vector<double>> t(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            double v;
            if (s.same_cluster(j, k)) {
                v = s.cluster_mean(s.cluster_of[std::size_t(j)]);
            } else {
                const double pj = s.eigenvalues[std::size_t(j)];
                const double pk = s.eigenvalues[std::size_t(k)];
                const double d = (pj - pk) / pk;
                v = pk * d / std::log1p(d);
            }
            t[std::size_t(j)][std::size_t(k)] = v;
            t[std::size_t(k)][std::size_t(j)] = v;
        }
    return t;
}

TangentVector fund_W_hat(const Observable& a, const PositiveOperator& omega) {
    const SpectralDecomposition& s = omega.spectral();
    return TangentVector(schur_product(log_mean_table(s), a, s), TangentVector::Kind::Cone);
}

TangentVector fund_W(const Observable& a, const DensityState& rho) {
    TangentVector w = fund_W_hat(a, immerse(rho));
    return tangent_project(w.hermitian(), rho);
}

TangentVector fund_W_deformed(const Observable& a, const DensityState& rho,
                              const DeformationParam& k) {
    TangentVector w = fund_W(a, rho);
    return TangentVector((1.0 / k.kappa) * w.hermitian(), TangentVector::Kind::StateSpace);
}

// deformed table: same cluster -> mean/kappa, else
// (1/2)(phi_j + phi_k)(w_j - w_k)/(phi_j - phi_k) with phi(x) = x^kappa
static std::vector<std::vector<double>> deformed_table(const SpectralDecomposition& s,
                                                       double kappa) {
    const int n = s.dim();
    std::vector<std::vector<double>> t(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            double v;
            if (s.same_cluster(j, k)) {
                v = s.cluster_mean(s.cluster_of[std::size_t(j)]) / kappa;
            } else {
                const double wj = s.eigenvalues[std::size_t(j)];
                const double wk = s.eigenvalues[std::size_t(k)];
                const double d = (wj - wk) / wk;
                const double phij = std::pow(wj, kappa);
                const double phik = std::pow(wk, kappa);
                // phi_j - phi_k = phi_k expm1(kappa log1p(d)), stable for close pairs
                const double phidiff = phik * std::expm1(kappa * std::log1p(d));
                v = 0.5 * (phij + phik) * (wj - wk) / phidiff;
            }
            t[std::size_t(j)][std::size_t(k)] = v;
            t[std::size_t(k)][std::size_t(j)] = v;
        }
    return t;
}

TangentVector fund_Z_hat(const Observable& a, const PositiveOperator& omega,
                         const DeformationParam& k) {
    const SpectralDecomposition& s = omega.spectral();
    return TangentVector(schur_product(deformed_table(s, k.kappa), a, s),
                         TangentVector::Kind::Cone);
}

TangentVector fund_Z(const Observable& a, const DensityState& rho, const DeformationParam& k) {
    TangentVector z = fund_Z_hat(a, immerse(rho), k);
    return tangent_project(z.hermitian(), rho);
}

ActionKind parse_action(const std::string& name) {
    if (name == "alpha")
        return ActionKind::Alpha;
    if (name == "beta-hat")
        return ActionKind::BetaHat;
    if (name == "beta")
        return ActionKind::Beta;
    if (name == "beta-kappa")
        return ActionKind::BetaDeformed;
    if (name == "gamma-hat")
        return ActionKind::GammaHat;
    if (name == "gamma")
        return ActionKind::Gamma;
    if (name == "gamma-kappa")
        return ActionKind::GammaDeformed;
    if (name == "zeta")
        return ActionKind::Zeta;
    throw UsageError("unknown action '" + name + "'");
}

ComplexMatrix exp_i_scaled(const HermitianMatrix& b, double s) {
    SpectralDecomposition d = hermitian_eig(b);
    const int n = b.dim();
    ComplexMatrix u(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double th = s * d.eigenvalues[std::size_t(k)];
                acc += d.u(i, k) * cplx(std::cos(th), std::sin(th)) * std::conj(d.u(j, k));
            }
            u(i, j) = acc;
        }
    return u;
}

namespace {

// curve g(t) = exp(t (a - i b)/2) for the conjugation-side actions
ComplexMatrix gl_curve(const LieDirection& dir, double t) {
    ComplexMatrix m = dir.a.matrix() * cplx(0.5 * t) + dir.b.matrix() * cplx(0.0, -0.5 * t);
    return expm_general(m);
}

// curve (exp(-i t b/2), t a) for the translation-side actions
CotangentElement cotangent_curve(const LieDirection& dir, double t) {
    ComplexMatrix u = exp_i_scaled(dir.b, -0.5 * t);
    return CotangentElement(u, HermitianMatrix(dir.a.matrix() * cplx(t)));
}

HermitianMatrix central_difference(const HermitianMatrix& plus, const HermitianMatrix& minus,
                                   double h) {
    return (0.5 / h) * (plus - minus);
}

HermitianMatrix shave_trace(const HermitianMatrix& v) {
    const double t = v.trace();
    if (t == 0.0)
        return v;
    return v - (t / double(v.dim())) * HermitianMatrix::identity(v.dim());
}

} // namespace

TangentVector flow_fundamental_numeric(const ActionSpec& spec, const LieDirection& dir,
                                       const DensityState& rho, double h) {
    HermitianMatrix plus, minus;
    switch (spec.kind) {
    case ActionKind::Alpha:
        plus = act_alpha(exp_i_scaled(dir.b, -0.5 * h), rho).hermitian();
        minus = act_alpha(exp_i_scaled(dir.b, 0.5 * h), rho).hermitian();
        break;
    case ActionKind::Beta:
        plus = act_beta(GLElement(gl_curve(dir, h)), rho).hermitian();
        minus = act_beta(GLElement(gl_curve(dir, -h)), rho).hermitian();
        break;
    case ActionKind::BetaDeformed: {
        DeformationParam k(spec.kappa);
        plus = act_beta_deformed(GLElement(gl_curve(dir, h)), rho, k).hermitian();
        minus = act_beta_deformed(GLElement(gl_curve(dir, -h)), rho, k).hermitian();
        break;
    }
    case ActionKind::Gamma:
        plus = act_gamma(cotangent_curve(dir, h), rho).hermitian();
        minus = act_gamma(cotangent_curve(dir, -h), rho).hermitian();
        break;
    case ActionKind::GammaDeformed: {
        DeformationParam k(spec.kappa);
        plus = act_gamma_deformed(cotangent_curve(dir, h), rho, k).hermitian();
        minus = act_gamma_deformed(cotangent_curve(dir, -h), rho, k).hermitian();
        break;
    }
    default:
        throw DomainError("action does not operate on states");
    }
    return TangentVector(shave_trace(central_difference(plus, minus, h)),
                         TangentVector::Kind::StateSpace);
}

TangentVector flow_fundamental_numeric(const ActionSpec& spec, const LieDirection& dir,
                                       const PositiveOperator& omega, double h) {
    HermitianMatrix plus, minus;
    switch (spec.kind) {
    case ActionKind::BetaHat:
        plus = act_beta_hat(GLElement(gl_curve(dir, h)), omega).hermitian();
        minus = act_beta_hat(GLElement(gl_curve(dir, -h)), omega).hermitian();
        break;
    case ActionKind::GammaHat:
        plus = act_gamma_hat(cotangent_curve(dir, h), omega).hermitian();
        minus = act_gamma_hat(cotangent_curve(dir, -h), omega).hermitian();
        break;
    default:
        throw DomainError("action does not operate on the cone");
    }
    return TangentVector(central_difference(plus, minus, h), TangentVector::Kind::Cone);
}

HermitianMatrix flow_fundamental_numeric_zeta(const LieDirection& dir, const HermitianMatrix& x,
                                              double h) {
    HermitianMatrix plus = act_zeta(cotangent_curve(dir, h), x);
    HermitianMatrix minus = act_zeta(cotangent_curve(dir, -h), x);
    return central_difference(plus, minus, h);
}

GLElement connecting_element(const DensityState& from, const DensityState& to) {
    HermitianMatrix to_half = matrix_power(to.spectral(), 0.5);
    HermitianMatrix from_invhalf = matrix_power(from.spectral(), -0.5);
    return GLElement(to_half.matrix() * from_invhalf.matrix());
}

} // namespace qig
