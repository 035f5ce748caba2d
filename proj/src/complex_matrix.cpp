#include "qig/complex_matrix.hpp"

#include <cmath>
#include <sstream>

namespace qig {

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(int(d.size()));
    for (int i = 0; i < m.dim(); ++i)
        m(i, i) = d[std::size_t(i)];
    return m;
}

static void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
        throw DimensionError(os.str());
    }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_)
        v *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i)
        t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_)
        s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    const int n = a.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (int j = 0; j < n; ++j)
                r(i, j) += aik * b(k, j);
        }
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a, const Tolerances& tol) {
    const int n = a.dim();
    if (n == 0)
        throw DimensionError("empty matrix is not Hermitian");
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
    if (dev > tol.hermiticity_abs) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max deviation " << dev;
        throw DomainError(os.str());
    }
    m_ = ComplexMatrix(n);
    for (int i = 0; i < n; ++i) {
        m_(i, i) = a(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.matrix() - b.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(cplx(s) * a.matrix());
}

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
    return max_abs_diff(a.matrix(), b.matrix());
}

HermitianMatrix conjugate_by(const ComplexMatrix& g, const HermitianMatrix& x) {
    ComplexMatrix p = g * x.matrix() * g.adjoint();
    // Hermitian in exact arithmetic; symmetrize away roundoff before the
    // constructor's deviation check so large |g| cannot trip it.
    const int n = p.dim();
    ComplexMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s(i, j) = 0.5 * (p(i, j) + std::conj(p(j, i)));
    return HermitianMatrix(s);
}

} // namespace qig
