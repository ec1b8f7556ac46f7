#ifndef HYPTEST_EXPONENT_HPP
#define HYPTEST_EXPONENT_HPP

#include "hyptest/tilted_family.hpp"

namespace hyptest {

/// Solution of D(Q_{alpha*}||P) = delta together with the error exponent
/// D(delta) = D(Q_{alpha*}||Q) and the canonical tilted moments of
/// log(p/q) under Q_{alpha*}.
struct ExponentSolution {
    double delta;          // constraint level, nats
    double alpha_star;     // in (0,1)
    double d_delta;        // D(delta), nats
    double sigma_star_sq;  // Var(log p/q) under Q_{alpha*}, nats^2
    double rho_star;       // E|log p/q - mean|^3 under Q_{alpha*}, nats^3
};

/// sigma0^2 = inf over alpha of Var(log p/q under Q_alpha),
/// rho0 = sup over alpha of the absolute third central moment.
struct ExtremalMoments {
    double sigma0_sq;
    double rho0;
};

/// Mean, variance, signed and absolute third central moments of
/// log(p/q) under the tilted distribution Q_alpha.
struct TiltedLLRMoments {
    double mean;
    double variance;
    double third_central;      // signed
    double abs_third_central;
};

TiltedLLRMoments tilted_llr_moments(const TiltedFamily& f, double alpha);

/// First and second derivatives in alpha of the two exponents,
/// from the moments of log(p/q) under Q_alpha:
///   dDP  = -(1-alpha) Var,     dDQ  = alpha Var,
///   d2DP = Var - (1-alpha) mu3, d2DQ = Var + alpha mu3.
struct ExponentDerivatives {
    double d_dp;   // d D(Q_alpha||P) / d alpha
    double d_dq;   // d D(Q_alpha||Q) / d alpha
    double d2_dp;
    double d2_dq;
};

/// g(alpha) = D(Q_alpha||P) via the closed form
/// -log Z(alpha) - (1-alpha) Z'(alpha)/Z(alpha); strictly decreasing.
double g_alpha(const TiltedFamily& f, double alpha);

/// Solve g(alpha*) = delta by bisection to interval width 1e-13 and
/// populate the exponent solution. Requires 0 < delta < D(Q||P);
/// throws DeltaOutOfRange otherwise and DegenerateFamily when P = Q.
ExponentSolution solve_alpha_star(const TiltedFamily& f, double delta);

ExponentDerivatives exponent_derivatives(const TiltedFamily& f, double alpha);

/// Extremal moments over alpha in [0,1] (the endpoint limits are attained
/// values on a finite alphabet: moments under Q and under P). Grid scan
/// plus golden-section refinement around the best grid cell.
/// Throws DegenerateFamily when the infimum variance is < 1e-14.
ExtremalMoments extremal_moments(const TiltedFamily& f);

}  // namespace hyptest

#endif
