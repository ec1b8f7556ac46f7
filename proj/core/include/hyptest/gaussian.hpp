#ifndef HYPTEST_GAUSSIAN_HPP
#define HYPTEST_GAUSSIAN_HPP

namespace hyptest::gaussian {

/// Standard normal density; bounded above by 1/sqrt(2 pi).
double phi_pdf(double x);

/// Standard normal distribution function, absolute error <= 1e-12.
double phi_cdf(double x);

/// Inverse of phi_cdf on (0,1); |phi_cdf(phi_inv(u)) - u| <= 1e-12.
/// Throws DomainError for u outside (0,1).
double phi_inv(double u);

}  // namespace hyptest::gaussian

#endif
