#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qig/errors.hpp"
#include "qig/state_space.hpp"

using namespace qig;
using namespace qig::testing;

TEST_CASE("positive operators enforce the faithfulness floor") {
    CHECK_THROWS_AS(PositiveOperator(diag2(1.0, 1e-13)), ConditioningError);
    CHECK_THROWS_AS(PositiveOperator(diag2(1.0, -0.5)), ConditioningError);
    const PositiveOperator ok(diag2(1.0, 1e-3));
    CHECK(ok.trace() == doctest::Approx(1.0 + 1e-3).epsilon(1e-15));
}

TEST_CASE("density states require unit trace") {
    CHECK_THROWS_AS(DensityState(diag2(0.6, 0.6)), DomainError);
    const DensityState rho(diag2(0.75, 0.25));
    CHECK(rho.dim() == 2);
}

TEST_CASE("normalization onto the states") {
    CHECK(diff(project_to_states(PositiveOperator(diag2(2.0, 2.0))).hermitian(), diag2(0.5, 0.5)) < 1e-15);
    CHECK(diff(project_to_states(PositiveOperator(diag2(1.0, 3.0))).hermitian(), diag2(0.25, 0.75)) < 1e-15);
    // idempotent on states
    const auto rho = random_density(3, 71);
    CHECK(diff(project_to_states(immerse(rho)).hermitian(), rho.hermitian()) < 1e-15);
}

TEST_CASE("expectation values") {
    CHECK(expectation(sigma_z(), DensityState(diag2(0.75, 0.25))) == doctest::Approx(0.5).epsilon(1e-15));
    const auto rho = random_density(4, 3);
    const auto a = random_observable(4, 4);
    const auto b = random_observable(4, 5);
    CHECK(expectation(a + b, rho) ==
          doctest::Approx(expectation(a, rho) + expectation(b, rho)).epsilon(1e-12));
}

TEST_CASE("tangent vectors know their kind") {
    CHECK_THROWS_AS(TangentVector(HermitianMatrix(ComplexMatrix::identity(2)),
                                  TangentVector::Kind::StateSpace),
                    DomainError);
    const TangentVector cone(HermitianMatrix(ComplexMatrix::identity(2)), TangentVector::Kind::Cone);
    CHECK(cone.kind() == TangentVector::Kind::Cone);
    const TangentVector flat(sigma_x(), TangentVector::Kind::StateSpace);
    CHECK(flat.kind() == TangentVector::Kind::StateSpace);
}

TEST_CASE("tangent projection removes the trace part") {
    const auto rho = random_density(3, 9);
    const auto v = random_observable(3, 10);
    const auto p = tangent_project(v, rho);
    CHECK(std::abs(p.matrix().trace()) < 1e-14);
    CHECK(p.kind() == TangentVector::Kind::StateSpace);
    // projecting the identity against rho gives tr = n times rho removed
    const auto q = tangent_project(HermitianMatrix(ComplexMatrix::identity(3)), rho);
    CHECK(diff(q.hermitian(), HermitianMatrix(ComplexMatrix::identity(3)) + (-3.0) * rho.hermitian()) < 1e-13);
}

TEST_CASE("dilation field is the base point itself") {
    const PositiveOperator omega(diag2(1.0, 3.0));
    const auto d = dilation_field(omega);
    CHECK(d.kind() == TangentVector::Kind::Cone);
    CHECK(diff(d.hermitian(), omega.hermitian()) == 0.0);
}

TEST_CASE("samplers are faithful and reproducible") {
    for (int n : {2, 3, 4}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const auto rho = random_density(n, seed);
            double tr = 0.0;
            for (double p : rho.spectral().eigenvalues) {
                CHECK(p > 0.9e-3 / n);
                tr += p;
            }
            CHECK(tr == doctest::Approx(1.0).epsilon(1e-13));
            const auto again = random_density(n, seed);
            CHECK(diff(rho.hermitian(), again.hermitian()) == 0.0);
        }
        CHECK(diff(random_density(n, 1).hermitian(), random_density(n, 2).hermitian()) > 1e-3);
    }
}

TEST_CASE("random unitaries are unitary and seed-stable") {
    for (int n : {2, 3, 5}) {
        const auto u = random_unitary(n, 77);
        CHECK(diff(u.adjoint() * u, ComplexMatrix::identity(n)) < 1e-13);
        CHECK(diff(u, random_unitary(n, 77)) == 0.0);
    }
}

TEST_CASE("random tangents live in the right space") {
    const auto rho = random_density(4, 12);
    const auto t = random_tangent(rho, 13);
    CHECK(t.kind() == TangentVector::Kind::StateSpace);
    CHECK(t.dim() == 4);
    CHECK(std::abs(t.matrix().trace()) < 1e-14);
}
