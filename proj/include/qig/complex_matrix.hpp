#pragma once

#include <complex>
#include <vector>

#include "qig/errors.hpp"
#include "qig/tolerances.hpp"

namespace qig {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), data_(std::size_t(dim) * dim) {
        if (dim <= 0)
            throw DimensionError("matrix dimension must be positive");
    }

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(const std::vector<double>& d);

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return data_[std::size_t(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return data_[std::size_t(r) * dim_ + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

private:
    int dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Entrywise max |a - b|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Hermitian matrix.  Construction checks |A - A^*| entrywise against the
// hermiticity tolerance, then symmetrizes exactly so downstream arithmetic
// sees A == A^* to the last bit.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& a,
                             const Tolerances& tol = Tolerances::defaults());

    static HermitianMatrix identity(int dim) { return HermitianMatrix(ComplexMatrix::identity(dim)); }
    static HermitianMatrix zero(int dim) { return HermitianMatrix(ComplexMatrix::zero(dim)); }
    static HermitianMatrix diagonal(const std::vector<double>& d) {
        return HermitianMatrix(ComplexMatrix::diagonal(d));
    }

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cplx& operator()(int r, int c) const { return m_(r, c); }

    double trace() const { return m_.trace().real(); }
    double frobenius_norm() const { return m_.frobenius_norm(); }

private:
    ComplexMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b);

// g x g^*, symmetrized.
HermitianMatrix conjugate_by(const ComplexMatrix& g, const HermitianMatrix& x);

} // namespace qig
