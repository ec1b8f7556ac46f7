#include "hyptest/distribution.hpp"

#include <cmath>

#include "hyptest/kahan.hpp"

namespace hyptest {

FiniteDistribution::FiniteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
        throw DomainError("alphabet size must be at least 2");
    }
    KahanSum total;
    for (double v : probs_) {
        if (!(v >= 0.0)) {
            throw DomainError("probabilities must be nonnegative and finite");
        }
        total.add(v);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        throw DomainError("probabilities must sum to 1 within 1e-12");
    }
}

FiniteDistribution FiniteDistribution::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("bernoulli parameter must lie in [0,1]");
    }
    return FiniteDistribution({1.0 - p, p});
}

bool FiniteDistribution::dominated_by(const FiniteDistribution& other) const {
    if (other.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        if (probs_[i] > 0.0 && other.probs_[i] == 0.0) return false;
    }
    return true;
}

bool FiniteDistribution::same_support(const FiniteDistribution& other) const {
    if (other.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        if ((probs_[i] > 0.0) != (other.probs_[i] > 0.0)) return false;
    }
    return true;
}

double kl_divergence(const FiniteDistribution& a, const FiniteDistribution& b) {
    if (a.size() != b.size()) {
        throw SupportMismatch("kl_divergence: distributions on different alphabets");
    }
    KahanSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;  // 0 log(0/.) = 0
        if (b[i] == 0.0) {
            throw SupportMismatch("kl_divergence: a has mass where b does not");
        }
        sum.add(a[i] * std::log(a[i] / b[i]));
    }
    return std::max(sum.value(), 0.0);
}

LLRMoments llr_moments(const FiniteDistribution& reference,
                       const FiniteDistribution& p,
                       const FiniteDistribution& q) {
    if (!p.same_support(q)) {
        throw SupportMismatch("llr_moments: p and q must be mutually absolutely continuous");
    }
    if (!reference.dominated_by(p)) {
        throw SupportMismatch("llr_moments: reference must be dominated by p");
    }
    KahanSum mean_sum;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference[i] == 0.0) continue;
        mean_sum.add(reference[i] * std::log(p[i] / q[i]));
    }
    const double mean = mean_sum.value();

    KahanSum var_sum;
    KahanSum third_sum;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference[i] == 0.0) continue;
        const double c = std::log(p[i] / q[i]) - mean;
        var_sum.add(reference[i] * c * c);
        third_sum.add(reference[i] * std::abs(c * c * c));
    }

    LLRMoments out;
    out.mean = mean;
    out.variance = std::max(var_sum.value(), 0.0);
    out.abs_third_central = std::max(third_sum.value(), 0.0);
    out.degenerate_variance = out.variance < 1e-14;
    if (!out.degenerate_variance) {
        const double sigma = std::sqrt(out.variance);
        out.be_constant = out.abs_third_central / (2.0 * sigma * sigma * sigma);
    }
    return out;
}

double hellinger_sq(const FiniteDistribution& a, const FiniteDistribution& b) {
    if (a.size() != b.size()) {
        throw SupportMismatch("hellinger_sq: distributions on different alphabets");
    }
    KahanSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum.add(std::sqrt(a[i] * b[i]));
    }
    const double h2 = 1.0 - sum.value();
    return std::min(std::max(h2, 0.0), 1.0);
}

}  // namespace hyptest
