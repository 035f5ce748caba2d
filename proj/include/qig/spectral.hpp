#pragma once

#include <functional>
#include <vector>

#include "qig/complex_matrix.hpp"

namespace qig {

// Eigendecomposition of a Hermitian matrix.  Eigenvalues ascending,
// eigenvectors the columns of u, clusters a partition of indices whose
// eigenvalues agree up to the relative clustering threshold.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix u;
    std::vector<std::vector<int>> clusters;
    std::vector<int> cluster_of; // index -> cluster id

    int dim() const { return int(eigenvalues.size()); }
    bool same_cluster(int j, int k) const { return cluster_of[j] == cluster_of[k]; }
    double cluster_mean(int cluster_id) const;
};

// Cyclic Jacobi eigensolver.  Deterministic: fixed sweep order, eigenvalues
// sorted ascending with stable ties, and each eigenvector's
// largest-magnitude component made real positive.
SpectralDecomposition hermitian_eig(const HermitianMatrix& a,
                                    const Tolerances& tol = Tolerances::defaults());

// U diag(f(p)) U^*.  Throws DomainError naming the eigenvalue if f is not
// finite there.
HermitianMatrix apply_scalar_function(const SpectralDecomposition& s,
                                      const std::function<double(double)>& f);

// Loewner table of first divided differences: same-cluster entries take
// fprime at the cluster mean, cross-cluster entries (f(p_j)-f(p_k))/(p_j-p_k).
std::vector<std::vector<double>> first_divided_difference(
    const SpectralDecomposition& s,
    const std::function<double(double)>& f,
    const std::function<double(double)>& fprime);

// U (table .* (U^* a U)) U^* for a real symmetric table.
HermitianMatrix schur_product(const std::vector<std::vector<double>>& table,
                              const HermitianMatrix& a,
                              const SpectralDecomposition& basis);

// (i/2)(ab - ba); Hermitian for Hermitian inputs.
HermitianMatrix comm(const HermitianMatrix& a, const HermitianMatrix& b);

// (ab + ba)/2.
HermitianMatrix anticomm(const HermitianMatrix& a, const HermitianMatrix& b);

// Spectral powers/logs; require a strictly positive spectrum.
HermitianMatrix matrix_power(const SpectralDecomposition& s, double t);
HermitianMatrix matrix_log(const SpectralDecomposition& s);
HermitianMatrix matrix_exp(const HermitianMatrix& a);

// Frechet derivative of exp at a in direction v (Daleckii-Krein form).
HermitianMatrix dexp_directional(const HermitianMatrix& a, const HermitianMatrix& v);

// exp of a general (not necessarily Hermitian) matrix by scaling and squaring.
ComplexMatrix expm_general(const ComplexMatrix& m);

} // namespace qig
