#include "qig/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qig {

double SpectralDecomposition::cluster_mean(int cluster_id) const {
    const auto& members = clusters[std::size_t(cluster_id)];
    double s = 0.0;
    for (int j : members)
        s += eigenvalues[std::size_t(j)];
    return s / double(members.size());
}

namespace {

void build_clusters(SpectralDecomposition& s, double rel_threshold) {
    const int n = s.dim();
    s.clusters.clear();
    s.cluster_of.assign(std::size_t(n), -1);
    for (int j = 0; j < n; ++j) {
        bool merge = false;
        if (j > 0) {
            double a = s.eigenvalues[std::size_t(j - 1)];
            double b = s.eigenvalues[std::size_t(j)];
            double gate = rel_threshold * std::max({1.0, std::abs(a), std::abs(b)});
            merge = std::abs(b - a) <= gate;
        }
        if (!merge)
            s.clusters.emplace_back();
        s.clusters.back().push_back(j);
        s.cluster_of[std::size_t(j)] = int(s.clusters.size()) - 1;
    }
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j)
                s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

SpectralDecomposition hermitian_eig(const HermitianMatrix& h, const Tolerances& tol) {
    const int n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix u = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double stop = 1e-14 * scale;
    const int max_sweeps = 60;

    double off = off_diagonal_norm(a);
    int sweep = 0;
    while (off > stop) {
        if (++sweep > max_sweeps)
            throw ConvergenceError("Jacobi eigensolver did not converge", off);
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-30 * scale) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const cplx phase = apq / b; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                double t;
                if (tau == 0.0)
                    t = 1.0;
                else
                    t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx jqp = -s * std::conj(phase);
                const cplx jqq = c * std::conj(phase);
                // columns p,q of a and u
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p);
                    const cplx aiq = a(i, q);
                    a(i, p) = c * aip + jqp * aiq;
                    a(i, q) = s * aip + jqq * aiq;
                    const cplx uip = u(i, p);
                    const cplx uiq = u(i, q);
                    u(i, p) = c * uip + jqp * uiq;
                    u(i, q) = s * uip + jqq * uiq;
                }
                // rows p,q of a
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j);
                    const cplx aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * apj + c * phase * aqj;
                }
                a(p, p) = app - t * b;
                a(q, q) = aqq + t * b;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
        off = off_diagonal_norm(a);
    }

    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        vals[std::size_t(i)] = a(i, i).real();

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return vals[std::size_t(x)] < vals[std::size_t(y)]; });

    SpectralDecomposition dec;
    dec.eigenvalues.resize(static_cast<std::size_t>(n));
    dec.u = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        const int src = order[std::size_t(k)];
        dec.eigenvalues[std::size_t(k)] = vals[std::size_t(src)];
        // fixed phase: largest-magnitude component real positive
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            double m = std::abs(u(i, src));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        cplx ph = u(imax, src) / best;
        for (int i = 0; i < n; ++i)
            dec.u(i, k) = u(i, src) * std::conj(ph);
    }
    build_clusters(dec, tol.cluster_rel);
    return dec;
}

HermitianMatrix apply_scalar_function(const SpectralDecomposition& s,
                                      const std::function<double(double)>& f) {
    const int n = s.dim();
    std::vector<double> fv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double v = f(s.eigenvalues[std::size_t(j)]);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "scalar function undefined at eigenvalue " << s.eigenvalues[std::size_t(j)];
            throw DomainError(os.str());
        }
        fv[std::size_t(j)] = v;
    }
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += s.u(i, k) * fv[std::size_t(k)] * std::conj(s.u(j, k));
            r(i, j) = acc;
            r(j, i) = std::conj(acc);
        }
    for (int i = 0; i < n; ++i)
        r(i, i) = r(i, i).real();
    return HermitianMatrix(r);
}

std::vector<std::vector<double>> first_divided_difference(
    const SpectralDecomposition& s,
    const std::function<double(double)>& f,
    const std::function<double(double)>& fprime) {
    const int n = s.dim();
    std::vector<std::vector<double>> table(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    std::vector<double> fv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        fv[std::size_t(j)] = f(s.eigenvalues[std::size_t(j)]);
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            double v;
            if (s.same_cluster(j, k)) {
                v = fprime(s.cluster_mean(s.cluster_of[std::size_t(j)]));
            } else {
                const double pj = s.eigenvalues[std::size_t(j)];
                const double pk = s.eigenvalues[std::size_t(k)];
                v = (fv[std::size_t(j)] - fv[std::size_t(k)]) / (pj - pk);
            }
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "divided difference not finite at eigenvalue pair ("
                   << s.eigenvalues[std::size_t(j)] << ", " << s.eigenvalues[std::size_t(k)] << ")";
                throw DomainError(os.str());
            }
            table[std::size_t(j)][std::size_t(k)] = v;
            table[std::size_t(k)][std::size_t(j)] = v;
        }
    }
    return table;
}

HermitianMatrix schur_product(const std::vector<std::vector<double>>& table,
                              const HermitianMatrix& a,
                              const SpectralDecomposition& basis) {
    const int n = a.dim();
    if (int(table.size()) != n || basis.dim() != n)
        throw DimensionError("Schur table / basis / matrix dimensions disagree");
    // a in eigenbasis
    ComplexMatrix ua = basis.u.adjoint() * a.matrix() * basis.u;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            ua(j, k) *= table[std::size_t(j)][std::size_t(k)];
    ComplexMatrix back = basis.u * ua * basis.u.adjoint();
    // symmetrize roundoff
    ComplexMatrix sym(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym(i, j) = 0.5 * (back(i, j) + std::conj(back(j, i)));
    return HermitianMatrix(sym);
}

HermitianMatrix comm(const HermitianMatrix& a, const HermitianMatrix& b) {
    ComplexMatrix p = a.matrix() * b.matrix();
    const int n = p.dim();
    ComplexMatrix r(n);
    const cplx half_i(0.0, 0.5);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = half_i * (p(i, j) - std::conj(p(j, i)));
    return HermitianMatrix(r);
}

HermitianMatrix anticomm(const HermitianMatrix& a, const HermitianMatrix& b) {
    ComplexMatrix p = a.matrix() * b.matrix();
    const int n = p.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = 0.5 * (p(i, j) + std::conj(p(j, i)));
    return HermitianMatrix(r);
}

static void require_positive_spectrum(const SpectralDecomposition& s, const char* op) {
    for (double p : s.eigenvalues)
        if (p <= 0.0) {
            std::ostringstream os;
            os << op << " requires a strictly positive spectrum; offending eigenvalue " << p;
            throw DomainError(os.str());
        }
}

HermitianMatrix matrix_power(const SpectralDecomposition& s, double t) {
    require_positive_spectrum(s, "matrix power");
    return apply_scalar_function(s, [t](double x) { return std::pow(x, t); });
}

HermitianMatrix matrix_log(const SpectralDecomposition& s) {
    require_positive_spectrum(s, "matrix log");
    return apply_scalar_function(s, [](double x) { return std::log(x); });
}

HermitianMatrix matrix_exp(const HermitianMatrix& a) {
    return apply_scalar_function(hermitian_eig(a), [](double x) { return std::exp(x); });
}

HermitianMatrix dexp_directional(const HermitianMatrix& a, const HermitianMatrix& v) {
    SpectralDecomposition s = hermitian_eig(a);
    auto table = first_divided_difference(
        s, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); });
    return schur_product(table, v, s);
}

ComplexMatrix expm_general(const ComplexMatrix& m) {
    const int n = m.dim();
    const double nrm = m.frobenius_norm();
    int squarings = 0;
    if (nrm > 0.5)
        squarings = int(std::ceil(std::log2(nrm))) + 1;
    cplx inv_scale = 1.0 / std::pow(2.0, squarings);
    ComplexMatrix t = m * inv_scale;

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 60; ++k) {
        term = term * t;
        term *= cplx(1.0 / double(k));
        result += term;
        if (term.frobenius_norm() <= 1e-20 * std::max(1.0, result.frobenius_norm()))
            break;
    }
    for (int i = 0; i < squarings; ++i)
        result = result * result;
    return result;
}

} // namespace qig
