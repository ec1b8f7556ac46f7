#ifndef HYPTEST_DISTRIBUTION_HPP
#define HYPTEST_DISTRIBUTION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hyptest/errors.hpp"

namespace hyptest {

/// Probability vector over a shared finite alphabet of symbol ids 0..k-1.
/// Immutable after construction; entries may be zero but must be
/// nonnegative and sum to one within 1e-12.
class FiniteDistribution {
public:
    explicit FiniteDistribution(std::vector<double> probs);

    /// Two-symbol distribution {1-p, p}; symbol 1 carries mass p.
    static FiniteDistribution bernoulli(double p);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const noexcept { return probs_[i]; }
    const std::vector<double>& probs() const noexcept { return probs_; }

    /// True iff every atom of *this with positive mass has positive
    /// mass under `other` (*this << other).
    bool dominated_by(const FiniteDistribution& other) const;

    /// True iff both distributions have exactly the same zero pattern.
    bool same_support(const FiniteDistribution& other) const;

private:
    std::vector<double> probs_;
};

/// Moments of the log-likelihood ratio log(p/q) under a reference measure.
struct LLRMoments {
    double mean = 0.0;               // nats; D(P||Q) when reference = p
    double variance = 0.0;           // nats^2
    double abs_third_central = 0.0;  // nats^3
    std::optional<double> be_constant;  // B = T/(2 sigma^3); absent if degenerate
    bool degenerate_variance = false;   // variance < 1e-14
};

/// D(a||b) = sum a_i log(a_i/b_i) in nats, with 0 log(0/.) = 0.
/// Throws SupportMismatch unless a << b.
double kl_divergence(const FiniteDistribution& a, const FiniteDistribution& b);

/// Mean, variance and absolute third central moment of log(p/q) under
/// `reference`. Requires p, q mutually absolutely continuous and
/// reference << p.
LLRMoments llr_moments(const FiniteDistribution& reference,
                       const FiniteDistribution& p,
                       const FiniteDistribution& q);

/// Squared Hellinger distance H2^2(a,b) = 1 - sum sqrt(a_i b_i), in [0,1].
double hellinger_sq(const FiniteDistribution& a, const FiniteDistribution& b);

}  // namespace hyptest

#endif
