#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qig/state_space.hpp"

namespace qig {

// Operator-interval coefficient function f on (0, inf), normalized so that
// f(1) equals the scale factor.  The one-parameter family
//   f_kappa(x) = (kappa/2)(x - 1)(x^kappa + 1)/(x^kappa - 1)
// interpolates the named special cases; kappa -> 0 gives the log-mean form
// (x - 1)/log x.  TestSquare and TestIdentity break the symmetry f(t) =
// t f(1/t) on purpose, for exercising the checkers.
struct MonotoneFunctionSpec {
    enum class Kind { PowerInterpolation, LogMean, TestSquare, TestIdentity };

    Kind kind = Kind::PowerInterpolation;
    double kappa = 1.0;
    double scale = 1.0;
    std::string label = "bh";

    static MonotoneFunctionSpec power_interpolation(double kappa, double scale = 1.0);
    static MonotoneFunctionSpec log_mean(double scale = 1.0);           // "bkm"
    static MonotoneFunctionSpec arithmetic_mean();                      // "bh", kappa = 1
    static MonotoneFunctionSpec square_root_mean();                     // "wy", kappa = 1/2
    static MonotoneFunctionSpec test_square();
    static MonotoneFunctionSpec test_identity();

    // Accepts "gl:K", "bkm", "bh", "wy", "test:square", "test:identity".
    static MonotoneFunctionSpec parse(const std::string& text);
};

// f at a point; x must be positive.  Near x = 1 a series branch keeps the
// removable singularity well conditioned.
double eval_f(const MonotoneFunctionSpec& spec, double x,
              const Tolerances& tol = Tolerances::defaults());

// 61-point logarithmic grid on [1e-3, 1e3].
std::vector<double> standard_log_grid();

struct SymmetryReport {
    double max_rel_residual = 0.0;   // of f(t) - t f(1/t) over the grid
    double worst_point = 1.0;
    double normalization_gap = 0.0;  // |f(1) - scale|
};

SymmetryReport check_symmetry(const MonotoneFunctionSpec& spec,
                              const std::vector<double>& grid);

struct MonotonicityWitness {
    HermitianMatrix a;
    HermitianMatrix b;          // b = a + perturbation, b >= a
    double lambda_min = 0.0;    // most negative eigenvalue of f(b) - f(a)
    int trial = 0;
};

// Smallest eigenvalue of f(b) - f(a) for a <= b; negative values witness a
// failure of operator monotonicity.
double monotonicity_margin(const MonotoneFunctionSpec& spec,
                           const HermitianMatrix& a, const HermitianMatrix& b);

// Randomized falsification search: returns the witness with the lowest trial
// index whose margin undercuts the threshold, or nullopt after `trials`
// attempts.  Absence of a witness is never a proof.
std::optional<MonotonicityWitness> matrix_monotonicity_witness(
    const MonotoneFunctionSpec& spec, int n, int trials, std::uint64_t seed,
    const Tolerances& tol = Tolerances::defaults());

struct SlopeAtZero {
    bool divergent = false;
    double value = 0.0;          // meaningful when not divergent
    std::vector<double> probes;  // difference quotients at shrinking x
};

// One-sided difference-quotient probe of f' near 0+, with geometric
// extrapolation of the tail.  Only defined for the power-interpolation family.
SlopeAtZero derivative_at_zero_plus(const MonotoneFunctionSpec& spec);

} // namespace qig
