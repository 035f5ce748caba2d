#include "qig/state_space.hpp"

#include <cmath>
#include <sstream>

namespace qig {

PositiveOperator::PositiveOperator(const HermitianMatrix& a, const Tolerances& tol)
    : h_(a), spec_(hermitian_eig(a, tol)) {
    trace_ = 0.0;
    for (double p : spec_.eigenvalues) {
        if (p <= tol.positivity_floor) {
            std::ostringstream os;
            os << "operator is not faithfully positive: eigenvalue " << p
               << " at or below floor " << tol.positivity_floor;
            throw ConditioningError(os.str());
        }
        trace_ += p;
    }
}

DensityState::DensityState(const HermitianMatrix& a, const Tolerances& tol)
    : DensityState(PositiveOperator(a, tol), tol) {}

DensityState::DensityState(const PositiveOperator& p, const Tolerances& tol) : op_(p) {
    const double t = op_.trace();
    if (std::abs(t - 1.0) > tol.unit_trace) {
        std::ostringstream os;
        os << "state trace " << t << " deviates from 1 beyond " << tol.unit_trace;
        throw DomainError(os.str());
    }
}

TangentVector::TangentVector(const HermitianMatrix& v, Kind kind, const Tolerances& tol)
    : v_(v), kind_(kind) {
    if (kind_ == Kind::StateSpace) {
        const double t = v_.trace();
        if (std::abs(t) > tol.traceless) {
            std::ostringstream os;
            os << "state-space tangent has trace " << t;
            throw DomainError(os.str());
        }
    }
}

DensityState project_to_states(const PositiveOperator& omega) {
    const double t = omega.trace();
    HermitianMatrix scaled = (1.0 / t) * omega.hermitian();
    return DensityState(scaled);
}

PositiveOperator immerse(const DensityState& rho) { return rho.positive(); }

double expectation(const Observable& a, const HermitianMatrix& x, const Tolerances& tol) {
    if (a.dim() != x.dim())
        throw DimensionError("observable and operator dimensions disagree");
    cplx t = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            t += x(i, k) * a(k, i);
    if (std::abs(t.imag()) > tol.imag_residue * (1.0 + std::abs(t.real()))) {
        std::ostringstream os;
        os << "expectation has imaginary residue " << t.imag();
        throw DomainError(os.str());
    }
    return t.real();
}

double expectation(const Observable& a, const DensityState& rho) {
    return expectation(a, rho.hermitian());
}

double expectation(const Observable& a, const PositiveOperator& omega) {
    return expectation(a, omega.hermitian());
}

TangentVector dilation_field(const PositiveOperator& omega) {
    return TangentVector(omega.hermitian(), TangentVector::Kind::Cone);
}

TangentVector tangent_project(const HermitianMatrix& v, const DensityState& rho) {
    if (v.dim() != rho.dim())
        throw DimensionError("tangent and state dimensions disagree");
    const double t = v.trace();
    HermitianMatrix projected = v - t * rho.hermitian();
    // trace is 0 up to roundoff; shave the residue so the tangent invariant holds
    const double r = projected.trace();
    if (r != 0.0)
        projected = projected - (r / double(v.dim())) * HermitianMatrix::identity(v.dim());
    return TangentVector(projected, TangentVector::Kind::StateSpace);
}

ComplexMatrix random_ginibre(int n, Rng& rng) {
    ComplexMatrix g(n);
    const double inv_sqrt2 = 0.7071067811865475244;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = cplx(rng.gaussian() * inv_sqrt2, rng.gaussian() * inv_sqrt2);
    return g;
}

Observable random_observable(int n, Rng& rng) {
    ComplexMatrix g = random_ginibre(n, rng);
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return HermitianMatrix(h);
}

Observable random_observable(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_observable(n, rng);
}

DensityState random_density(int n, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix g = random_ginibre(n, rng);
    ComplexMatrix w = g * g.adjoint();
    HermitianMatrix wh((w + w.adjoint()) * cplx(0.5));
    double tr = wh.trace();
    // blend toward the maximally mixed state so the spectrum clears the floor
    const double mix = 1e-3;
    HermitianMatrix blended =
        ((1.0 - mix) / tr) * wh + (mix / double(n)) * HermitianMatrix::identity(n);
    return project_to_states(PositiveOperator(blended));
}

TangentVector random_tangent(const DensityState& rho, std::uint64_t seed) {
    Rng rng(seed);
    Observable h = random_observable(rho.dim(), rng);
    return tangent_project(h, rho);
}

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

ComplexMatrix random_unitary(int n, Rng& rng) {
    Observable h = random_observable(n, rng);
    SpectralDecomposition s = hermitian_eig(h);
    // exp(i h) columnwise through the eigenbasis
    ComplexMatrix u(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) {
                double lam = s.eigenvalues[std::size_t(k)];
                acc += s.u(i, k) * cplx(std::cos(lam), std::sin(lam)) * std::conj(s.u(j, k));
            }
            u(i, j) = acc;
        }
    return u;
}

} // namespace qig
