#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "qig/errors.hpp"
#include "qig/monotone_function.hpp"

using namespace qig;
using namespace qig::testing;

namespace {

std::vector<double> grid_50() {
    std::vector<double> g;
    for (int i = 0; i < 50; ++i)
        g.push_back(std::pow(10.0, -2.0 + 4.0 * i / 49.0));
    return g;
}

} // namespace

TEST_CASE("spec parsing") {
    CHECK(MonotoneFunctionSpec::parse("gl:0.5").kappa == 0.5);
    CHECK(MonotoneFunctionSpec::parse("gl:0.5").kind == MonotoneFunctionSpec::Kind::PowerInterpolation);
    CHECK(MonotoneFunctionSpec::parse("bh").kappa == 1.0);
    CHECK(MonotoneFunctionSpec::parse("wy").kappa == 0.5);
    CHECK(MonotoneFunctionSpec::parse("bkm").kind == MonotoneFunctionSpec::Kind::LogMean);
    CHECK(MonotoneFunctionSpec::parse("test:square").kind == MonotoneFunctionSpec::Kind::TestSquare);
    CHECK(MonotoneFunctionSpec::parse("test:identity").kind == MonotoneFunctionSpec::Kind::TestIdentity);
    for (const char* bad : {"gl:", "gl:x", "foo", "gl:-1", "gl:0", ""})
        CHECK_THROWS_AS(MonotoneFunctionSpec::parse(bad), UsageError);
}

TEST_CASE("frozen point values") {
    CHECK(eval_f(MonotoneFunctionSpec::arithmetic_mean(), 3.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eval_f(MonotoneFunctionSpec::square_root_mean(), 4.0) == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(eval_f(MonotoneFunctionSpec::log_mean(), std::numbers::e) ==
          doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
    CHECK(eval_f(MonotoneFunctionSpec::log_mean(), 1.0) == 1.0);
    CHECK(eval_f(MonotoneFunctionSpec::log_mean(2.0), std::numbers::e) ==
          doctest::Approx(2.0 * (std::numbers::e - 1.0)).epsilon(1e-14));
    CHECK(eval_f(MonotoneFunctionSpec::test_square(), 3.0) == 9.0);
    CHECK(eval_f(MonotoneFunctionSpec::test_identity(), 3.0) == 3.0);
    CHECK_THROWS_AS(eval_f(MonotoneFunctionSpec::arithmetic_mean(), 0.0), DomainError);
    CHECK_THROWS_AS(eval_f(MonotoneFunctionSpec::arithmetic_mean(), -1.0), DomainError);
}

TEST_CASE("kappa = 1 reduces to the arithmetic mean") {
    const auto f1 = MonotoneFunctionSpec::power_interpolation(1.0);
    for (double x : grid_50()) {
        const double want = 0.5 * (1.0 + x);
        CHECK(std::abs(eval_f(f1, x) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("kappa = 1/2 reduces to the square-root mean") {
    const auto fh = MonotoneFunctionSpec::power_interpolation(0.5);
    const auto wy = MonotoneFunctionSpec::square_root_mean();
    for (double x : grid_50()) {
        const double want = 0.25 * (std::sqrt(x) + 1.0) * (std::sqrt(x) + 1.0);
        CHECK(std::abs(eval_f(fh, x) - want) <= 1e-12 * (1.0 + std::abs(want)));
        CHECK(std::abs(eval_f(wy, x) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("series branch meets the direct branch") {
    for (double kappa : {0.3, 0.5, 1.0, 1.7}) {
        const auto spec = MonotoneFunctionSpec::power_interpolation(kappa);
        for (double eps : {9e-7, -9e-7, 5e-7, -5e-7}) {
            const double x = 1.0 + eps;
            // brute-force reference: worst-case cancellation ~ 1e-16 / (kappa eps)
            const double ref = 0.5 * kappa * (x - 1.0) * (std::pow(x, kappa) + 1.0) /
                               (std::pow(x, kappa) - 1.0);
            CHECK(std::abs(eval_f(spec, x) - ref) <= 2e-9);
        }
        // continuity across the switch point at |eps| = 1e-6
        const double left = eval_f(spec, 1.0 + 1e-6 - 1e-12);
        const double right = eval_f(spec, 1.0 + 1e-6 + 1e-12);
        CHECK(std::abs(left - right) < 1e-11);
    }
}

TEST_CASE("log-mean is the small-kappa limit") {
    const auto bkm = MonotoneFunctionSpec::log_mean();
    const auto tiny = MonotoneFunctionSpec::power_interpolation(1e-3);
    for (double x : {0.1, 0.5, 2.0, 10.0}) {
        CHECK(std::abs(eval_f(tiny, x) - eval_f(bkm, x)) < 1e-4);
    }
}

TEST_CASE("symmetry f(t) = t f(1/t)") {
    const auto grid = standard_log_grid();
    for (const char* label : {"bh", "wy", "bkm", "gl:0.3", "gl:1.5"}) {
        const auto rep = check_symmetry(MonotoneFunctionSpec::parse(label), grid);
        CHECK(rep.max_rel_residual < 1e-12);
        CHECK(rep.normalization_gap < 1e-15);
    }
    // the deliberately broken checker target
    const auto rep = check_symmetry(MonotoneFunctionSpec::test_square(), {0.5, 2.0});
    CHECK(rep.max_rel_residual > 0.1);
}

TEST_CASE("frozen monotonicity witness pair") {
    // f(B) - f(A) = [[3, 1], [1, 0]] for f(x) = x^2, smallest eigenvalue (3 - sqrt(13))/2
    const auto a = herm({{1.0, 1.0}, {1.0, 1.0}});
    const auto b = herm({{2.0, 1.0}, {1.0, 1.0}});
    const double margin = monotonicity_margin(MonotoneFunctionSpec::test_square(), a, b);
    CHECK(margin == doctest::Approx(0.5 * (3.0 - std::sqrt(13.0))).epsilon(1e-12));
    CHECK(margin < -0.3);
    // identity is matrix monotone, margin is the smallest eigenvalue of b - a
    CHECK(monotonicity_margin(MonotoneFunctionSpec::test_identity(), a, b) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("witness search finds failures beyond kappa = 1 and nothing below") {
    const auto hit = matrix_monotonicity_witness(MonotoneFunctionSpec::power_interpolation(1.5), 2, 2000, 101);
    REQUIRE(hit.has_value());
    CHECK(hit->lambda_min < -1e-8);
    // the reported pair reproduces its own margin
    CHECK(monotonicity_margin(MonotoneFunctionSpec::power_interpolation(1.5), hit->a, hit->b) ==
          doctest::Approx(hit->lambda_min).epsilon(1e-12));
    const auto rerun = matrix_monotonicity_witness(MonotoneFunctionSpec::power_interpolation(1.5), 2, 2000, 101);
    REQUIRE(rerun.has_value());
    CHECK(rerun->trial == hit->trial);

    for (const char* label : {"gl:0.25", "gl:0.5", "bh"})
        CHECK_FALSE(matrix_monotonicity_witness(MonotoneFunctionSpec::parse(label), 2, 500, 101).has_value());
}

TEST_CASE("slope of f at the origin") {
    const auto s15 = derivative_at_zero_plus(MonotoneFunctionSpec::power_interpolation(1.5));
    CHECK_FALSE(s15.divergent);
    CHECK(s15.value == doctest::Approx(-0.75).epsilon(2e-3));

    const auto s2 = derivative_at_zero_plus(MonotoneFunctionSpec::power_interpolation(2.0));
    CHECK_FALSE(s2.divergent);
    CHECK(s2.value == doctest::Approx(-1.0).epsilon(2e-3));

    const auto s1 = derivative_at_zero_plus(MonotoneFunctionSpec::power_interpolation(1.0));
    CHECK_FALSE(s1.divergent);
    CHECK(s1.value == doctest::Approx(0.5).epsilon(1e-6));

    for (double kappa : {0.25, 0.5, 0.75})
        CHECK(derivative_at_zero_plus(MonotoneFunctionSpec::power_interpolation(kappa)).divergent);

    CHECK_THROWS_AS(derivative_at_zero_plus(MonotoneFunctionSpec::log_mean()), DomainError);
}

TEST_CASE("boundary values of the family") {
    // f_kappa(0+) -> kappa/2
    for (double kappa : {0.5, 1.0, 1.5}) {
        const auto spec = MonotoneFunctionSpec::power_interpolation(kappa);
        CHECK(eval_f(spec, 1e-12) == doctest::Approx(0.5 * kappa).epsilon(1e-6));
    }
}
