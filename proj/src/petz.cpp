#include "qig/petz.hpp"

#include <cmath>
#include <sstream>

namespace qig {

PetzSuperoperator build_K(const PositiveOperator& x, const MonotoneFunctionSpec& f,
                          const Tolerances& tol) {
    PetzSuperoperator k;
    k.basis_ = x.spectral();
    const int n = k.basis_.dim();
    const auto& p = k.basis_.eigenvalues;
    k.coeffs_.assign(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
    for (int j = 0; j < n; ++j) {
        for (int kk = j; kk < n; ++kk) {
            double c;
            if (k.basis_.same_cluster(j, kk)) {
                c = k.basis_.cluster_mean(k.basis_.cluster_of[std::size_t(j)]) * f.scale;
            } else {
                c = p[std::size_t(kk)] * eval_f(f, p[std::size_t(j)] / p[std::size_t(kk)], tol);
            }
            if (!(c > 0.0) || !std::isfinite(c)) {
                std::ostringstream os;
                os << "superoperator coefficient not positive at eigenvalue pair ("
                   << p[std::size_t(j)] << ", " << p[std::size_t(kk)] << ")";
                throw DomainError(os.str());
            }
            k.coeffs_[std::size_t(j)][std::size_t(kk)] = c;
            k.coeffs_[std::size_t(kk)][std::size_t(j)] = c;
        }
    }
    return k;
}

HermitianMatrix PetzSuperoperator::apply(const HermitianMatrix& a) const {
    return schur_product(coeffs_, a, basis_);
}

HermitianMatrix PetzSuperoperator::apply_inverse(const HermitianMatrix& a) const {
    const int n = basis_.dim();
    std::vector<std::vector<double>> inv(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            inv[std::size_t(j)][std::size_t(k)] = 1.0 / coeffs_[std::size_t(j)][std::size_t(k)];
    return schur_product(inv, a, basis_);
}

static void validate_prefactor(const MetricSpec& m) {
    if (!(m.kappa_prefactor > 0.0) || !std::isfinite(m.kappa_prefactor))
        throw DomainError("metric prefactor must be positive and finite");
}

static double quadratic_form(const PetzSuperoperator& k, double prefactor,
                             const HermitianMatrix& v, const HermitianMatrix& w,
                             const Tolerances& tol) {
    const int n = k.basis().dim();
    ComplexMatrix vt = k.basis().u.adjoint() * v.matrix() * k.basis().u;
    ComplexMatrix wt = k.basis().u.adjoint() * w.matrix() * k.basis().u;
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk)
            acc += vt(j, kk) * std::conj(wt(j, kk)) / k.coefficients()[std::size_t(j)][std::size_t(kk)];
    if (std::abs(acc.imag()) > tol.imag_residue * (1.0 + std::abs(acc.real())))
        throw DomainError("metric value has imaginary residue");
    return prefactor * acc.real();
}

double metric_eval(const MetricSpec& m, const DensityState& rho,
                   const TangentVector& v, const TangentVector& w) {
    validate_prefactor(m);
    if (v.kind() != TangentVector::Kind::StateSpace || w.kind() != TangentVector::Kind::StateSpace)
        throw DomainError("state-space metric requires traceless tangents");
    PetzSuperoperator k = build_K(immerse(rho), m.function);
    return quadratic_form(k, m.kappa_prefactor, v.hermitian(), w.hermitian(),
                          Tolerances::defaults());
}

double metric_eval(const MetricSpec& m, const PositiveOperator& omega,
                   const HermitianMatrix& v, const HermitianMatrix& w) {
    validate_prefactor(m);
    PetzSuperoperator k = build_K(omega, m.function);
    return quadratic_form(k, m.kappa_prefactor, v, w, Tolerances::defaults());
}

TangentVector gradient_field(const MetricSpec& m, const Observable& a, const DensityState& rho) {
    validate_prefactor(m);
    PetzSuperoperator k = build_K(immerse(rho), m.function);
    HermitianMatrix ka = k.apply(a);
    TangentVector projected = tangent_project(ka, rho);
    return TangentVector((1.0 / m.kappa_prefactor) * projected.hermitian(),
                         TangentVector::Kind::StateSpace);
}

double gradient_defining_residual(const MetricSpec& m, const Observable& a,
                                  const DensityState& rho, const TangentVector& v) {
    TangentVector g = gradient_field(m, a, rho);
    const double lhs = metric_eval(m, rho, g, v);
    const double rhs = expectation(a, v.hermitian());
    return std::abs(lhs - rhs);
}

double fisher_rao_eval(const std::vector<double>& p, const std::vector<double>& u,
                       const std::vector<double>& v) {
    if (p.size() != u.size() || p.size() != v.size())
        throw DimensionError("probability and tangent vector lengths disagree");
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (!(p[j] > 0.0)) {
            std::ostringstream os;
            os << "probability component " << j << " is not positive: " << p[j];
            throw DomainError(os.str());
        }
        s += u[j] * v[j] / p[j];
    }
    return s;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, int dim_a, int dim_b, Subsystem over) {
    if (dim_a <= 0 || dim_b <= 0 || x.dim() != dim_a * dim_b)
        throw DimensionError("partial trace dimensions do not factor the operator");
    if (over == Subsystem::B) {
        ComplexMatrix r(dim_a);
        for (int a = 0; a < dim_a; ++a)
            for (int a2 = 0; a2 < dim_a; ++a2) {
                cplx acc = 0.0;
                for (int b = 0; b < dim_b; ++b)
                    acc += x(a * dim_b + b, a2 * dim_b + b);
                r(a, a2) = acc;
            }
        return r;
    }
    ComplexMatrix r(dim_b);
    for (int b = 0; b < dim_b; ++b)
        for (int b2 = 0; b2 < dim_b; ++b2) {
            cplx acc = 0.0;
            for (int a = 0; a < dim_a; ++a)
                acc += x(a * dim_b + b, a * dim_b + b2);
            r(b, b2) = acc;
        }
    return r;
}

Channel::Channel(std::vector<ComplexMatrix> kraus, const Tolerances& tol)
    : kraus_(std::move(kraus)) {
    if (kraus_.empty())
        throw DomainError("channel needs at least one Kraus operator");
    const int n = kraus_.front().dim();
    ComplexMatrix sum(n);
    for (const auto& k : kraus_) {
        if (k.dim() != n)
            throw DimensionError("Kraus operators of mixed dimension");
        sum += k.adjoint() * k;
    }
    double dev = max_abs_diff(sum, ComplexMatrix::identity(n));
    if (dev > tol.unitarity) {
        std::ostringstream os;
        os << "Kraus completeness violated by " << dev;
        throw DomainError(os.str());
    }
}

HermitianMatrix Channel::apply(const HermitianMatrix& x) const {
    const int n = dim();
    ComplexMatrix acc(n);
    for (const auto& k : kraus_)
        acc += k * x.matrix() * k.adjoint();
    ComplexMatrix sym(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym(i, j) = 0.5 * (acc(i, j) + std::conj(acc(j, i)));
    return HermitianMatrix(sym);
}

Channel random_cptp(int n, int env_dim, std::uint64_t seed) {
    if (n <= 0 || env_dim <= 0)
        throw DimensionError("channel dimensions must be positive");
    Rng rng(seed);
    const int rows = n * env_dim;
    // Gaussian frame, orthonormalized columnwise (two Gram-Schmidt passes)
    std::vector<std::vector<cplx>> cols(static_cast<std::size_t>(n), std::vector<cplx>(static_cast<std::size_t>(rows)));
    const double inv_sqrt2 = 0.7071067811865475244;
    for (auto& col : cols)
        for (auto& v : col)
            v = cplx(rng.gaussian() * inv_sqrt2, rng.gaussian() * inv_sqrt2);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                cplx proj = 0.0;
                for (int r = 0; r < rows; ++r)
                    proj += std::conj(cols[prev][std::size_t(r)]) * cols[c][std::size_t(r)];
                for (int r = 0; r < rows; ++r)
                    cols[c][std::size_t(r)] -= proj * cols[prev][std::size_t(r)];
            }
        }
        double nrm = 0.0;
        for (int r = 0; r < rows; ++r)
            nrm += std::norm(cols[c][std::size_t(r)]);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8)
            throw ConditioningError("degenerate Gaussian frame while sampling a channel");
        for (int r = 0; r < rows; ++r)
            cols[c][std::size_t(r)] /= nrm;
    }
    std::vector<ComplexMatrix> kraus(static_cast<std::size_t>(env_dim), ComplexMatrix(n));
    for (int e = 0; e < env_dim; ++e)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                kraus[std::size_t(e)](r, c) = cols[std::size_t(c)][std::size_t(r * env_dim + e)];
    return Channel(std::move(kraus));
}

Channel depolarizing_channel(double p) {
    if (p < 0.0 || p > 1.0)
        throw DomainError("depolarizing weight must lie in [0, 1]");
    ComplexMatrix k0 = ComplexMatrix::identity(2);
    k0 *= cplx(std::sqrt(1.0 - 0.75 * p));
    ComplexMatrix sx(2), sy(2), sz(2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    sy(0, 1) = cplx(0.0, -1.0);
    sy(1, 0) = cplx(0.0, 1.0);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const cplx w = std::sqrt(p) * 0.5;
    return Channel({k0, sx * w, sy * w, sz * w});
}

std::optional<double> cptp_contraction_margin(const MetricSpec& m, const Channel& channel,
                                              const DensityState& rho, const TangentVector& v) {
    HermitianMatrix pushed = channel.apply(rho.hermitian());
    DensityState sigma;
    try {
        sigma = project_to_states(PositiveOperator(pushed));
    } catch (const ConditioningError&) {
        return std::nullopt;
    }
    TangentVector fv = tangent_project(channel.apply(v.hermitian()), sigma);
    const double before = metric_eval(m, rho, v, v);
    const double after = metric_eval(m, sigma, fv, fv);
    return before - after;
}

ContractionReport cptp_contraction_check(const MetricSpec& m, int n, int env_dim,
                                         int trials, std::uint64_t seed,
                                         const Tolerances& tol) {
    ContractionReport rep;
    rep.trials = trials;
    bool first = true;
    for (int t = 0; t < trials; ++t) {
        Channel ch = random_cptp(n, env_dim, derive_seed(seed, std::uint64_t(t), 1));
        DensityState rho = random_density(n, derive_seed(seed, std::uint64_t(t), 2));
        TangentVector v = random_tangent(rho, derive_seed(seed, std::uint64_t(t), 3));
        auto margin = cptp_contraction_margin(m, ch, rho, v);
        if (!margin) {
            ++rep.skipped;
            continue;
        }
        if (first || *margin < rep.min_margin)
            rep.min_margin = *margin;
        first = false;
        if (*margin < tol.contraction_floor) {
            ++rep.violations;
            rep.worst_margin = std::min(rep.worst_margin, *margin);
        }
    }
    return rep;
}

} // namespace qig
