#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "qig/complex_matrix.hpp"

namespace qig::testing {

inline ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int n = static_cast<int>(rows.size());
    ComplexMatrix m(n);
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (const auto& v : row) {
            m(r, c) = v;
            ++c;
        }
        ++r;
    }
    return m;
}

inline HermitianMatrix herm(std::initializer_list<std::initializer_list<cplx>> rows) {
    return HermitianMatrix(from_rows(rows));
}

inline HermitianMatrix diag2(double a, double b) {
    return HermitianMatrix(ComplexMatrix::diagonal({a, b}));
}

inline HermitianMatrix diag3(double a, double b, double c) {
    return HermitianMatrix(ComplexMatrix::diagonal({a, b, c}));
}

inline HermitianMatrix sigma_x() { return herm({{0.0, 1.0}, {1.0, 0.0}}); }
inline HermitianMatrix sigma_y() { return herm({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}); }
inline HermitianMatrix sigma_z() { return herm({{1.0, 0.0}, {0.0, -1.0}}); }

inline double diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_diff(a, b); }
inline double diff(const HermitianMatrix& a, const HermitianMatrix& b) {
    return max_abs_diff(a.matrix(), b.matrix());
}
inline double diff(const HermitianMatrix& a, const ComplexMatrix& b) {
    return max_abs_diff(a.matrix(), b);
}

// Kronecker product, used to build bipartite test operators.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int ra = 0; ra < na; ++ra)
        for (int ca = 0; ca < na; ++ca)
            for (int rb = 0; rb < nb; ++rb)
                for (int cb = 0; cb < nb; ++cb)
                    out(ra * nb + rb, ca * nb + cb) = a(ra, ca) * b(rb, cb);
    return out;
}

}  // namespace qig::testing
