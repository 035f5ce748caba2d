#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "qig/errors.hpp"
#include "qig/spectral.hpp"
#include "qig/state_space.hpp"

using namespace qig;
using namespace qig::testing;

TEST_CASE("diagonal input decomposes exactly") {
    const auto s = hermitian_eig(diag2(2.0, 1.0));
    CHECK(s.eigenvalues[0] == 1.0);
    CHECK(s.eigenvalues[1] == 2.0);
    // permutation eigenvectors with the positive-phase convention
    CHECK(s.u(1, 0) == cplx(1.0, 0.0));
    CHECK(s.u(0, 1) == cplx(1.0, 0.0));
    CHECK(s.u(0, 0) == cplx(0.0, 0.0));
    CHECK(s.clusters.size() == 2);
}

TEST_CASE("identity collapses to one cluster") {
    const auto s = hermitian_eig(HermitianMatrix(ComplexMatrix::identity(3)));
    CHECK(s.clusters.size() == 1);
    CHECK(s.clusters[0].size() == 3);
    CHECK(s.cluster_mean(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.same_cluster(0, 2));
}

TEST_CASE("sigma_x eigenpairs") {
    const auto s = hermitian_eig(sigma_x());
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    const double r = 1.0 / std::sqrt(2.0);
    // phase convention puts the first (largest-magnitude tie) component on the positive real axis
    CHECK(std::abs(s.u(0, 0) - cplx(r, 0.0)) < 1e-14);
    CHECK(std::abs(s.u(1, 0) + cplx(r, 0.0)) < 1e-14);
    CHECK(std::abs(s.u(0, 1) - cplx(r, 0.0)) < 1e-14);
    CHECK(std::abs(s.u(1, 1) - cplx(r, 0.0)) < 1e-14);
}

TEST_CASE("random round trip, unitarity, ordering, determinism") {
    Rng rng(424242);
    for (int rep = 0; rep < 400; ++rep) {
        const int n = 1 + rep % 8;
        const auto a = random_observable(n, rng);
        const auto s = hermitian_eig(a);

        ComplexMatrix recon(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                cplx acc = 0.0;
                for (int k = 0; k < n; ++k)
                    acc += s.u(r, k) * s.eigenvalues[std::size_t(k)] * std::conj(s.u(c, k));
                recon(r, c) = acc;
            }
        const double scale = 1.0 + a.matrix().frobenius_norm();
        CHECK(diff(a.matrix(), recon) < 1e-12 * scale);

        const auto gram = s.u.adjoint() * s.u;
        CHECK(diff(gram, ComplexMatrix::identity(n)) < 1e-13);

        for (int k = 0; k + 1 < n; ++k)
            CHECK(s.eigenvalues[std::size_t(k)] <= s.eigenvalues[std::size_t(k + 1)]);

        const auto s2 = hermitian_eig(a);
        for (int k = 0; k < n; ++k)
            CHECK(s.eigenvalues[std::size_t(k)] == s2.eigenvalues[std::size_t(k)]);
        CHECK(diff(s.u, s2.u) == 0.0);
    }
}

TEST_CASE("cluster threshold rescales with magnitude") {
    const auto close_small = hermitian_eig(diag3(1.0, 1.0 + 1e-12, 2.0));
    CHECK(close_small.clusters.size() == 2);
    CHECK(close_small.same_cluster(0, 1));
    // gap 1e-5 below the relative threshold 1e-10 * 1e6
    const auto close_large = hermitian_eig(diag2(1.0e6, 1.0e6 + 1e-5));
    CHECK(close_large.clusters.size() == 1);
    const auto apart = hermitian_eig(diag2(1.0, 1.0 + 1e-8));
    CHECK(apart.clusters.size() == 2);
}

TEST_CASE("scalar calculus on the spectrum") {
    const auto s14 = hermitian_eig(diag2(1.0, 4.0));
    CHECK(diff(apply_scalar_function(s14, [](double x) { return std::sqrt(x); }), diag2(1.0, 2.0)) < 1e-15);

    const auto s1e = hermitian_eig(diag2(1.0, std::numbers::e));
    CHECK(diff(apply_scalar_function(s1e, [](double x) { return std::log(x); }), diag2(0.0, 1.0)) < 1e-15);

    CHECK_THROWS_AS(apply_scalar_function(s14, [](double x) { return 1.0 / (x - 1.0); }), DomainError);
}

TEST_CASE("divided difference table") {
    const auto s12 = hermitian_eig(diag2(1.0, 2.0));
    const auto sq = first_divided_difference(
        s12, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
    CHECK(sq[0][0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sq[0][1] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(sq[1][0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(sq[1][1] == doctest::Approx(4.0).epsilon(1e-15));

    const auto id = first_divided_difference(
        s12, [](double x) { return x; }, [](double) { return 1.0; });
    for (const auto& row : id)
        for (double v : row)
            CHECK(v == 1.0);
}

TEST_CASE("divided differences stay continuous across the cluster threshold") {
    for (double gap : {1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-6}) {
        const auto s = hermitian_eig(diag2(1.0, 1.0 + gap));
        const auto t = first_divided_difference(
            s, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
        // both branches agree with f'(1) = 2 up to the gap itself
        CHECK(std::abs(t[0][1] - 2.0) <= 1.5 * gap + 1e-14);
    }
}

TEST_CASE("schur product against the metric table example") {
    const auto s12 = hermitian_eig(diag2(1.0, 2.0));
    const std::vector<std::vector<double>> table{{2.0, 3.0}, {3.0, 4.0}};
    CHECK(diff(schur_product(table, HermitianMatrix(ComplexMatrix::identity(2)), s12), diag2(2.0, 4.0)) < 1e-15);
}

TEST_CASE("schur of the exp table matches a finite difference") {
    const auto a = random_observable(3, 991);
    const auto v = random_observable(3, 992);
    const double h = 1e-5;
    const auto plus = matrix_exp(a + h * v);
    const auto minus = matrix_exp(a + (-h) * v);
    const auto fd = (1.0 / (2.0 * h)) * (plus + (-1.0) * minus);
    CHECK(diff(dexp_directional(a, v), fd) < 1e-7 * (1.0 + fd.matrix().max_abs()));
}

TEST_CASE("commutator and anticommutator conventions") {
    // (i/2)(ab - ba) at the example pair
    const auto c = comm(diag2(0.75, 0.25), sigma_x());
    CHECK(diff(c, herm({{0.0, cplx(0.0, 0.25)}, {cplx(0.0, -0.25), 0.0}})) < 1e-15);
    CHECK(diff(anticomm(sigma_x(), sigma_x()), HermitianMatrix(ComplexMatrix::identity(2))) < 1e-15);
    const auto a = random_observable(4, 17);
    CHECK(comm(a, a).matrix().max_abs() < 1e-15);
    const auto b = random_observable(4, 18);
    // Hermiticity is preserved exactly by construction
    CHECK(diff(comm(a, b).matrix().adjoint(), comm(a, b).matrix()) == 0.0);
}

TEST_CASE("spectral powers and logs") {
    const auto s49 = hermitian_eig(diag2(4.0, 9.0));
    CHECK(diff(matrix_power(s49, 0.5), diag2(2.0, 3.0)) < 1e-14);
    const auto inv = matrix_power(s49, -1.0);
    CHECK(diff(inv.matrix() * ComplexMatrix::diagonal({4.0, 9.0}), ComplexMatrix::identity(2)) < 1e-14);
    CHECK_THROWS_AS(matrix_log(hermitian_eig(diag2(1.0, -1.0))), DomainError);
    CHECK_THROWS_AS(matrix_power(hermitian_eig(diag2(0.0, 1.0)), 0.5), DomainError);
}

TEST_CASE("dexp special values") {
    const auto zero3 = HermitianMatrix(ComplexMatrix::zero(3));
    const auto v = random_observable(3, 5);
    CHECK(diff(dexp_directional(zero3, v), v) < 1e-13);
    // off-diagonal direction picks up the divided difference (4-1)/ln 4
    const double c = 3.0 / std::log(4.0);
    CHECK(diff(dexp_directional(diag2(0.0, std::log(4.0)), sigma_x()), c * sigma_x()) < 1e-13);
}

TEST_CASE("general matrix exponential") {
    CHECK(diff(expm_general(ComplexMatrix::zero(3)), ComplexMatrix::identity(3)) == 0.0);
    const auto d = expm_general(ComplexMatrix::diagonal({1.0, 2.0}));
    CHECK(diff(d, ComplexMatrix::diagonal({std::exp(1.0), std::exp(2.0)})) < 1e-13);

    ComplexMatrix nil(2);
    nil(0, 1) = 1.0;
    auto expected = ComplexMatrix::identity(2);
    expected(0, 1) = 1.0;
    CHECK(diff(expm_general(nil), expected) < 1e-15);

    const auto a = random_observable(4, 33);
    CHECK(diff(expm_general(a.matrix()), matrix_exp(a).matrix()) < 1e-12 * (1.0 + matrix_exp(a).matrix().max_abs()));
}
