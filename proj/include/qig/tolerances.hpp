#pragma once

namespace qig {

// Central tolerance record.  Structural constructors use the defaults;
// suite drivers carry a copy whose residual thresholds may be scaled
// uniformly from the command line.
struct Tolerances {
    // structural checks
    double hermiticity_abs = 1e-12;   // |A - A^*| entrywise on construction
    double unitarity = 1e-10;         // |U^* U - I|
    double eig_reconstruction = 1e-10; // |A - U diag(p) U^*|
    double cluster_rel = 1e-10;       // eigenvalue clustering threshold (relative)
    double positivity_floor = 1e-12;  // faithfulness floor for positive operators
    double unit_trace = 1e-12;        // |tr(rho) - 1|
    double traceless = 1e-12;         // |tr(v)| for state-space tangents
    double invertibility = 1e-10;     // smallest singular value of a group element
    double imag_residue = 1e-12;      // discarded imaginary part of a real scalar

    // numerics
    double series_halfwidth = 1e-6;   // |x - 1| switch to series evaluation
    double fd_step = 1e-5;            // central-difference step for flows
    double bracket_step_outer = 1e-4; // outer step for vector-field brackets
    double bracket_step_inner = 1e-5; // inner step when a field is itself numeric

    // suite residual thresholds (scaled by --tol-scale)
    double analytic_residual = 1e-9;  // analytic field vs analytic field
    double numeric_residual = 1e-6;   // analytic field vs differenced flow
    double bracket_residual = 1e-5;   // nested finite-difference brackets
    double invariance_residual = 1e-10;     // unitary invariance of the metric
    double reduction_residual = 1e-10;      // commuting-case classical reduction
    double structural_residual = 1e-10;     // K(rho) = rho^2, composition laws, ...
    double exact_identity_residual = 1e-12; // identities that are exact in arithmetic
    double transport_residual = 1e-7;       // differenced expectation transport
    double special_value_residual = 1e-12;  // closed-form coefficient checks
    double derivative_limit_residual = 1e-3; // slope-at-zero limit
    double witness_threshold = -1e-8; // monotonicity counterexample margin
    double contraction_floor = -1e-8; // allowed numerical dip in CPTP margins

    static const Tolerances& defaults();

    // Returns a copy with every suite residual threshold multiplied by s.
    Tolerances scaled(double s) const;
};

} // namespace qig
