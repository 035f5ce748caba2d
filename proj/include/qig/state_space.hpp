#pragma once

#include <cstdint>

#include "qig/rng.hpp"
#include "qig/spectral.hpp"

namespace qig {

// Invertible positive operator (point of the positive cone).  Carries its
// spectral decomposition; every eigenvalue must clear the faithfulness floor.
class PositiveOperator {
public:
    PositiveOperator() = default;
    explicit PositiveOperator(const HermitianMatrix& a,
                              const Tolerances& tol = Tolerances::defaults());

    int dim() const { return h_.dim(); }
    const HermitianMatrix& hermitian() const { return h_; }
    const ComplexMatrix& matrix() const { return h_.matrix(); }
    const SpectralDecomposition& spectral() const { return spec_; }
    // trace accumulated as the sum of eigenvalues
    double trace() const { return trace_; }

private:
    HermitianMatrix h_;
    SpectralDecomposition spec_;
    double trace_ = 0.0;
};

// Faithful state: positive operator with unit trace.
class DensityState {
public:
    DensityState() = default;
    explicit DensityState(const HermitianMatrix& a,
                          const Tolerances& tol = Tolerances::defaults());
    explicit DensityState(const PositiveOperator& p,
                          const Tolerances& tol = Tolerances::defaults());

    int dim() const { return op_.dim(); }
    const HermitianMatrix& hermitian() const { return op_.hermitian(); }
    const ComplexMatrix& matrix() const { return op_.matrix(); }
    const SpectralDecomposition& spectral() const { return op_.spectral(); }
    const PositiveOperator& positive() const { return op_; }

private:
    PositiveOperator op_;
};

// Tangent vector at a point of the cone (any Hermitian matrix) or of the
// state space (traceless Hermitian matrix).
class TangentVector {
public:
    enum class Kind { StateSpace, Cone };

    TangentVector() = default;
    TangentVector(const HermitianMatrix& v, Kind kind,
                  const Tolerances& tol = Tolerances::defaults());

    Kind kind() const { return kind_; }
    int dim() const { return v_.dim(); }
    const HermitianMatrix& hermitian() const { return v_; }
    const ComplexMatrix& matrix() const { return v_.matrix(); }

private:
    HermitianMatrix v_;
    Kind kind_ = Kind::Cone;
};

using Observable = HermitianMatrix;

// omega / tr(omega); the trace is the sum of eigenvalues.
DensityState project_to_states(const PositiveOperator& omega);

// inclusion of the states into the cone
PositiveOperator immerse(const DensityState& rho);

// Re(tr(x a)); the imaginary residue is checked against tolerance and discarded.
double expectation(const Observable& a, const HermitianMatrix& x,
                   const Tolerances& tol = Tolerances::defaults());
double expectation(const Observable& a, const DensityState& rho);
double expectation(const Observable& a, const PositiveOperator& omega);

// Radial (dilation) direction at omega: the cone tangent with value omega.
TangentVector dilation_field(const PositiveOperator& omega);

// v - tr(v) rho: projection onto the traceless tangent space at rho.
TangentVector tangent_project(const HermitianMatrix& v, const DensityState& rho);

// Samplers.  All deterministic in the seed; explicit generator state.
DensityState random_density(int n, std::uint64_t seed);
Observable random_observable(int n, std::uint64_t seed);
TangentVector random_tangent(const DensityState& rho, std::uint64_t seed);
ComplexMatrix random_unitary(int n, std::uint64_t seed);
ComplexMatrix random_unitary(int n, Rng& rng);
ComplexMatrix random_ginibre(int n, Rng& rng);
Observable random_observable(int n, Rng& rng);

} // namespace qig
