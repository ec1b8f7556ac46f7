#ifndef HYPTEST_TILTED_FAMILY_HPP
#define HYPTEST_TILTED_FAMILY_HPP

#include <cstddef>
#include <vector>

#include "hyptest/distribution.hpp"

namespace hyptest {

/// Z(alpha) together with its first three derivatives,
/// Z^(m)(alpha) = sum_i p_i^alpha q_i^(1-alpha) (log p_i/q_i)^m.
struct ZDerivatives {
    double z;
    double d1;
    double d2;  // always >= 0
    double d3;
};

/// A (P,Q) pair with identical supports, the per-symbol log-likelihood
/// ratios, and evaluators for Z(alpha) and the tilted distributions
/// q_alpha = p^alpha q^(1-alpha) / Z(alpha).
///
/// Construction requires mutual absolute continuity (so that D(P||Q) and
/// D(Q||P) are both finite); throws SupportMismatch otherwise.
class TiltedFamily {
public:
    TiltedFamily(FiniteDistribution p, FiniteDistribution q);

    const FiniteDistribution& p() const noexcept { return p_; }
    const FiniteDistribution& q() const noexcept { return q_; }

    /// log(p_i/q_i) on the common support; zero on off-support symbols.
    const std::vector<double>& per_symbol_llr() const noexcept { return llr_; }

    /// Symbol ids with positive mass (shared by p and q).
    const std::vector<std::size_t>& support() const noexcept { return support_; }

    /// Z(alpha) = sum p^alpha q^(1-alpha), alpha in [0,1]; lies in (0,1].
    double z_alpha(double alpha) const;

    /// Z and its first three derivatives, alpha in (0,1), in one pass.
    ZDerivatives z_alpha_derivatives(double alpha) const;

    /// Tilted distribution q_alpha; endpoints return the stored q and p
    /// verbatim (no exp/log round trip).
    FiniteDistribution tilt(double alpha) const;

    double kl_pq() const noexcept { return kl_pq_; }  // D(P||Q)
    double kl_qp() const noexcept { return kl_qp_; }  // D(Q||P)

private:
    FiniteDistribution p_;
    FiniteDistribution q_;
    std::vector<double> llr_;
    std::vector<double> log_p_;
    std::vector<double> log_q_;
    std::vector<std::size_t> support_;
    double kl_pq_;
    double kl_qp_;
};

/// Chernoff information C(P,Q) = -min_{alpha in [0,1]} log Z(alpha),
/// computed by golden-section search on the convex function log Z.
double chernoff_information(const TiltedFamily& f);

}  // namespace hyptest

#endif
