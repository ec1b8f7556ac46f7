#ifndef HYPTEST_BOUNDS_HPP
#define HYPTEST_BOUNDS_HPP

#include <cstdint>
#include <optional>

#include "hyptest/distribution.hpp"
#include "hyptest/exponent.hpp"
#include "hyptest/tilted_family.hpp"

namespace hyptest {

/// A (family, n, epsilon/delta) query. Exactly one of epsilon/delta is
/// given at construction; the other is derived via delta = -log(eps)/n,
/// so that e^{-n delta} = eps exactly. epsilon may underflow to zero for
/// large n*delta; log_epsilon = -n*delta is always finite.
struct BoundQuery {
    const TiltedFamily* family;
    std::int64_t n;
    double epsilon;
    double delta;
    double log_epsilon;

    static BoundQuery from_epsilon(const TiltedFamily& f, std::int64_t n,
                                   double epsilon);
    static BoundQuery from_delta(const TiltedFamily& f, std::int64_t n,
                                 double delta);
};

/// Result of a Stein-regime bound: either the log-scale value, or the
/// minimal sample size at which the bound becomes valid.
struct SteinBound {
    bool valid = false;
    double value = 0.0;          // log-scale, nats (meaningful iff valid)
    std::int64_t min_valid_n = 0;
};

/// Prop. 1 right-hand side (1/gamma)(1 - e2 - p_tail), clamped below at 0.
double one_shot_converse_rhs(double e2, double p_tail, double gamma);

/// Thm. 1: log e*_{1,n}(eps) >= -nD(P||Q) - sqrt(n) sigma Phi^{-1}(eps + (B+Delta)/sqrt(n))
///                              - (1/2) log n + log Delta,  for n >= [(B+Delta)/(1-eps)]^2.
SteinBound stein_converse(const BoundQuery& q, double delta_slack = 1.0);

/// Thm. 2: log e*_{1,n}(eps) <= -nD(P||Q) - sqrt(n) sigma Phi^{-1}(eps - B/sqrt(n))
///                              - (1/2) log n + log(1/(sqrt(2 pi) sigma) + 2B),
/// for n > (B/eps)^2.
SteinBound stein_achievability(const BoundQuery& q);

/// Lemma BE2 right-hand side (1/sqrt(2 pi) + rho/sigma^2) e^{-x} / (sqrt(n) sigma).
double be2_bound(double sigma, double rho, std::int64_t n, double x);

/// Thm. 3 constant C, from the canonical tilted moments:
///   C = log(1/(sigma* alpha* sqrt(2 pi)) + rho*/sigma*^3)
///     + (alpha*/(1-alpha*)) log(1/(sigma* (1-alpha*) sqrt(2 pi)) + rho*/sigma*^3).
double achievability_constant(const ExponentSolution& sol);

/// Thm. 4 constant C' with its auxiliary m and validity thresholds.
struct ConverseConstant {
    double c_prime;
    double m;            // always < 0
    std::int64_t n_min;  // smallest n where the converse bound is claimed
    std::int64_t n0;     // smallest n with log n' <= (1-a*) sigma*^2 sqrt(n') for all n' >= n
};

ConverseConstant converse_constant(const ExponentSolution& sol,
                                   const ExtremalMoments& ext);

/// Every closed-form bound and approximation evaluated at one query.
/// Log-scale values are in nats; probabilities are the exponentials
/// (Strassen reported unclamped; a clamped companion is provided).
struct BoundReport {
    std::int64_t n = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    double log_epsilon = 0.0;

    double log_stein = 0.0;                 // Eq. (7): -n D(P||Q)
    std::optional<double> log_strassen;     // Eq. (8); absent when eps underflows
    std::optional<double> log_hoeffding;    // Eq. (9): -n D(delta)
    std::optional<double> log_new;          // Eq. (10)

    double stein = 0.0;
    std::optional<double> strassen;         // may exceed 1 (reported as-is)
    std::optional<double> strassen_clamped; // min(strassen, 1)
    std::optional<double> hoeffding;
    std::optional<double> new_approx;

    bool exponent_valid = false;            // delta in (0, D(Q||P))
    std::optional<double> alpha_star;
    std::optional<double> d_delta;
    std::optional<double> C;

    std::optional<double> c_prime;
    std::optional<double> m;
    std::optional<std::int64_t> n0;
    std::optional<std::int64_t> n_min_converse;

    std::optional<double> stein_conv_lb;    // log-scale, present when valid
    std::optional<double> stein_ach_ub;
    std::int64_t stein_conv_min_n = 0;
    std::int64_t stein_ach_min_n = 0;
};

/// The four log-scale approximations of Eqs. (7)-(10) plus C, for a query
/// with a precomputed exponent solution and LLR moments under P.
BoundReport approximations(const BoundQuery& q, const ExponentSolution& sol,
                           const LLRMoments& mom);

/// Full report: approximations plus Thm. 3/4 constants and the
/// Stein-regime finite-n bounds. Handles out-of-range delta by marking
/// the exponent-regime fields absent.
BoundReport full_report(const BoundQuery& q, double delta_slack = 1.0);

}  // namespace hyptest

#endif
