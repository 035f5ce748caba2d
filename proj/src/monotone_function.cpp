#include "qig/monotone_function.hpp"

#include <cmath>
#include <sstream>

namespace qig {

MonotoneFunctionSpec MonotoneFunctionSpec::power_interpolation(double kappa, double scale) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw UsageError("power-interpolation parameter must be positive and finite");
    MonotoneFunctionSpec s;
    s.kind = Kind::PowerInterpolation;
    s.kappa = kappa;
    s.scale = scale;
    std::ostringstream os;
    os << "gl:" << kappa;
    s.label = os.str();
    return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::log_mean(double scale) {
    MonotoneFunctionSpec s;
    s.kind = Kind::LogMean;
    s.kappa = 0.0;
    s.scale = scale;
    s.label = "bkm";
    return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::arithmetic_mean() {
    MonotoneFunctionSpec s = power_interpolation(1.0);
    s.label = "bh";
    return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::square_root_mean() {
    MonotoneFunctionSpec s = power_interpolation(0.5);
    s.label = "wy";
    return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::test_square() {
    MonotoneFunctionSpec s;
    s.kind = Kind::TestSquare;
    s.label = "test:square";
    return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::test_identity() {
    MonotoneFunctionSpec s;
    s.kind = Kind::TestIdentity;
    s.label = "test:identity";
    return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::parse(const std::string& text) {
    if (text == "bkm")
        return log_mean();
    if (text == "bh")
        return arithmetic_mean();
    if (text == "wy")
        return square_root_mean();
    if (text == "test:square")
        return test_square();
    if (text == "test:identity")
        return test_identity();
    if (text.rfind("gl:", 0) == 0) {
        const std::string num = text.substr(3);
        std::size_t pos = 0;
        double kappa = 0.0;
        try {
            kappa = std::stod(num, &pos);
        } catch (const std::exception&) {
            throw UsageError("unparsable spec string '" + text + "'");
        }
        if (pos != num.size())
            throw UsageError("trailing characters in spec string '" + text + "'");
        MonotoneFunctionSpec s = power_interpolation(kappa);
        s.label = text;
        return s;
    }
    throw UsageError("unknown spec string '" + text + "'");
}

double eval_f(const MonotoneFunctionSpec& spec, double x, const Tolerances& tol) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("coefficient function requires positive finite argument");
    const double eps = x - 1.0;
    switch (spec.kind) {
    case MonotoneFunctionSpec::Kind::PowerInterpolation: {
        const double k = spec.kappa;
        if (std::abs(eps) < tol.series_halfwidth)
            return spec.scale * (1.0 + 0.5 * eps + (k * k - 1.0) * eps * eps / 12.0);
        const double em = std::expm1(k * std::log1p(eps)); // x^kappa - 1
        return spec.scale * 0.5 * k * eps * (em + 2.0) / em;
    }
    case MonotoneFunctionSpec::Kind::LogMean: {
        if (std::abs(eps) < tol.series_halfwidth)
            return spec.scale * (1.0 + 0.5 * eps - eps * eps / 12.0);
        return spec.scale * eps / std::log1p(eps);
    }
    case MonotoneFunctionSpec::Kind::TestSquare:
        return spec.scale * x * x;
    case MonotoneFunctionSpec::Kind::TestIdentity:
        return spec.scale * x;
    }
    throw DomainError("unreachable spec kind");
}

std::vector<double> standard_log_grid() {
    std::vector<double> g;
    const int points = 61;
    for (int i = 0; i < points; ++i)
        g.push_back(std::pow(10.0, -3.0 + 6.0 * double(i) / double(points - 1)));
    return g;
}

SymmetryReport check_symmetry(const MonotoneFunctionSpec& spec, const std::vector<double>& grid) {
    SymmetryReport rep;
    rep.normalization_gap = std::abs(eval_f(spec, 1.0) - spec.scale);
    for (double t : grid) {
        const double lhs = eval_f(spec, t);
        const double rhs = t * eval_f(spec, 1.0 / t);
        const double rel = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
        if (rel > rep.max_rel_residual) {
            rep.max_rel_residual = rel;
            rep.worst_point = t;
        }
    }
    return rep;
}

double monotonicity_margin(const MonotoneFunctionSpec& spec,
                           const HermitianMatrix& a, const HermitianMatrix& b) {
    // The matrix order lives on positive semidefinite operators, so boundary
    // eigenvalues take the continuous extension f(0+); eigen-noise below zero
    // is clamped within an absolute rounding allowance.
    const double floor_tol = 1e-12 * std::max(1.0, std::max(a.frobenius_norm(), b.frobenius_norm()));
    auto f = [&](double x) {
        if (x <= 0.0) {
            if (x < -floor_tol)
                throw DomainError("matrix monotonicity is checked on the positive semidefinite order");
            if (spec.kind == MonotoneFunctionSpec::Kind::PowerInterpolation)
                return 0.5 * spec.kappa * spec.scale;
            return 0.0;
        }
        return eval_f(spec, x);
    };
    HermitianMatrix fa = apply_scalar_function(hermitian_eig(a), f);
    HermitianMatrix fb = apply_scalar_function(hermitian_eig(b), f);
    SpectralDecomposition d = hermitian_eig(fb - fa);
    return d.eigenvalues.front();
}

std::optional<MonotonicityWitness> matrix_monotonicity_witness(
    const MonotoneFunctionSpec& spec, int n, int trials, std::uint64_t seed,
    const Tolerances& tol) {
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, std::uint64_t(trial)));
        const int strategy = trial % 3;

        // base operator: random spectrum, random frame
        const double lo = 1e-4;
        const double hi = (strategy == 2) ? 1e-1 : 10.0;
        std::vector<double> eigs(static_cast<std::size_t>(n));
        for (auto& e : eigs)
            e = rng.log_uniform(lo, hi);
        ComplexMatrix u = random_unitary(n, rng);
        ComplexMatrix base = u * ComplexMatrix::diagonal(eigs) * u.adjoint();
        HermitianMatrix a((base + base.adjoint()) * cplx(0.5));

        HermitianMatrix p = HermitianMatrix::zero(n);
        double s = rng.log_uniform(1e-6, 1.0);
        if (strategy == 1) {
            // rank-one bump along the eigenvector of the smallest eigenvalue,
            // aimed at any scalar-monotonicity dip near zero
            SpectralDecomposition sd = hermitian_eig(a);
            ComplexMatrix proj(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    proj(i, j) = sd.u(i, 0) * std::conj(sd.u(j, 0));
            p = HermitianMatrix((proj + proj.adjoint()) * cplx(0.5));
        } else {
            ComplexMatrix g = random_ginibre(n, rng);
            ComplexMatrix w = g * g.adjoint();
            HermitianMatrix wh((w + w.adjoint()) * cplx(0.5));
            p = (1.0 / std::max(wh.frobenius_norm(), 1e-300)) * wh;
        }
        HermitianMatrix b = a + s * p;

        const double margin = monotonicity_margin(spec, a, b);
        if (margin < tol.witness_threshold) {
            MonotonicityWitness w{a, b, margin, trial};
            return w;
        }
    }
    return std::nullopt;
}

SlopeAtZero derivative_at_zero_plus(const MonotoneFunctionSpec& spec) {
    if (spec.kind != MonotoneFunctionSpec::Kind::PowerInterpolation)
        throw DomainError("slope probe at zero is only defined for the power-interpolation family");
    SlopeAtZero out;
    for (int k = 3; k <= 8; ++k) {
        const double x = std::pow(10.0, -k);
        const double h = x / 64.0;
        out.probes.push_back((eval_f(spec, x + h) - eval_f(spec, x)) / h);
    }
    const auto& q = out.probes;
    bool increasing = true;
    for (std::size_t i = 1; i < q.size(); ++i)
        if (q[i] <= q[i - 1])
            increasing = false;
    const double last = q.back();
    const double mid = q[q.size() - 3];
    if (increasing && last > 0.0 && last > 1.5 * mid) {
        out.divergent = true;
        return out;
    }
    // tail errors decay geometrically in x; Aitken extrapolation of the last three
    const double d2 = q[q.size() - 1] - 2.0 * q[q.size() - 2] + q[q.size() - 3];
    if (std::abs(d2) > 1e-12 * (1.0 + std::abs(last))) {
        const double d1 = q[q.size() - 1] - q[q.size() - 2];
        out.value = last - d1 * d1 / d2;
    } else {
        out.value = last;
    }
    return out;
}

} // namespace qig
