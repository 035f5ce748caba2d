#pragma once

#include "qig/monotone_function.hpp"

namespace qig {

// Metric specification: coefficient function plus an overall prefactor
// multiplying the quadratic form.
struct MetricSpec {
    MonotoneFunctionSpec function;
    double kappa_prefactor = 1.0;
};

// Superoperator K applied entrywise in the eigenbasis of the base point:
// coefficients c_jk = p_k f(p_j / p_k), symmetric because f(t) = t f(1/t).
class PetzSuperoperator {
public:
    PetzSuperoperator() = default;

    const SpectralDecomposition& basis() const { return basis_; }
    const std::vector<std::vector<double>>& coefficients() const { return coeffs_; }

    HermitianMatrix apply(const HermitianMatrix& a) const;
    HermitianMatrix apply_inverse(const HermitianMatrix& a) const;

    friend PetzSuperoperator build_K(const PositiveOperator& x, const MonotoneFunctionSpec& f,
                                     const Tolerances& tol);

private:
    SpectralDecomposition basis_;
    std::vector<std::vector<double>> coeffs_;
};

PetzSuperoperator build_K(const PositiveOperator& x, const MonotoneFunctionSpec& f,
                          const Tolerances& tol = Tolerances::defaults());

// kappa_prefactor * Re tr(v K^{-1}(w)).  State-space overload requires
// traceless tangents; cone overload accepts any Hermitian pair.
double metric_eval(const MetricSpec& m, const DensityState& rho,
                   const TangentVector& v, const TangentVector& w);
double metric_eval(const MetricSpec& m, const PositiveOperator& omega,
                   const HermitianMatrix& v, const HermitianMatrix& w);

// Riemannian gradient of the expectation function of a at rho:
// (K(a) - tr(K(a)) rho) / kappa_prefactor.
TangentVector gradient_field(const MetricSpec& m, const Observable& a, const DensityState& rho);

// Defining-property residual |G(grad, v) - tr(a v)| for a given tangent v.
double gradient_defining_residual(const MetricSpec& m, const Observable& a,
                                  const DensityState& rho, const TangentVector& v);

// Classical Fisher-Rao form sum_j u_j v_j / p_j on a positive probability vector.
double fisher_rao_eval(const std::vector<double>& p, const std::vector<double>& u,
                       const std::vector<double>& v);

enum class Subsystem { A, B };

// Partial trace of an operator on a bipartite space of dimensions (dim_a, dim_b).
ComplexMatrix partial_trace(const ComplexMatrix& x, int dim_a, int dim_b, Subsystem over);

// Completely positive trace-preserving map in Kraus form.
class Channel {
public:
    Channel() = default;
    explicit Channel(std::vector<ComplexMatrix> kraus,
                     const Tolerances& tol = Tolerances::defaults());

    int dim() const { return kraus_.empty() ? 0 : kraus_.front().dim(); }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

    HermitianMatrix apply(const HermitianMatrix& x) const;

private:
    std::vector<ComplexMatrix> kraus_;
};

// Random channel from a Haar-style isometry into an environment of the given
// dimension (Kraus blocks of an orthonormalized Gaussian frame).
Channel random_cptp(int n, int env_dim, std::uint64_t seed);

// (1 - p) rho + p tr(rho) I/2 on a qubit.
Channel depolarizing_channel(double p);

// G_rho(v, v) - G_{F(rho)}(F(v), F(v)); nonnegative for contractive metrics.
// Returns nullopt when the pushed-forward state fails the faithfulness floor.
std::optional<double> cptp_contraction_margin(const MetricSpec& m, const Channel& channel,
                                              const DensityState& rho, const TangentVector& v);

struct ContractionReport {
    int trials = 0;
    int skipped = 0;               // conditioning failures after push-forward
    double min_margin = 0.0;
    int violations = 0;            // margins below the contraction floor
    double worst_margin = 0.0;     // most negative margin seen
};

// Randomized sweep of contraction margins for one channel shape.
ContractionReport cptp_contraction_check(const MetricSpec& m, int n, int env_dim,
                                         int trials, std::uint64_t seed,
                                         const Tolerances& tol = Tolerances::defaults());

} // namespace qig
