#ifndef HYPTEST_NP_ORACLE_HPP
#define HYPTEST_NP_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "hyptest/tilted_family.hpp"

namespace hyptest {

/// One value of the sufficient statistic sum_i log(p/q)(x_i) on the
/// product space, with its log-masses under P^n and Q^n.
struct LLRAtom {
    double llr_sum;
    double log_p_mass;
    double log_q_mass;
};

/// The exact distribution of the n-sample LLR sum: atoms grouped by
/// symbol-count composition, merged on equal LLR values, sorted ascending.
class LLRAtomTable {
public:
    static constexpr std::uint64_t kMaxAtoms = 2'000'000;

    std::int64_t n() const noexcept { return n_; }
    const std::vector<LLRAtom>& atoms() const noexcept { return atoms_; }

    /// logsumexp of log_q_mass over atoms[i..end); suffix_log_q(size()) = -inf.
    double suffix_log_q(std::size_t i) const noexcept { return suffix_log_q_[i]; }

private:
    friend LLRAtomTable build_atom_table(const TiltedFamily&, std::int64_t);
    std::int64_t n_ = 0;
    std::vector<LLRAtom> atoms_;
    std::vector<double> suffix_log_q_;
};

/// Exact e*_{1,n}(eps) for the randomized Neyman-Pearson test, plus the
/// threshold atom and boundary randomization weight making e2 = eps exactly.
struct OracleResult {
    double e1_star;           // in [0,1]; may underflow for tiny log values
    double log_e1_star;       // nats
    double threshold_llr;     // LLR of the boundary atom
    double boundary_weight;   // fraction of the boundary atom declared Q
    double epsilon_used;
    double log_epsilon_used;
};

/// Exact distribution of the n-fold LLR sum, via multinomial log-masses
/// per symbol-count composition. Throws TooLarge when the composition
/// count C(n+k-1, k-1) exceeds kMaxAtoms.
LLRAtomTable build_atom_table(const TiltedFamily& f, std::int64_t n);

/// Randomized-NP optimum at second-error budget eps in [0,1].
OracleResult e1_star(const LLRAtomTable& table, double epsilon);

/// Same, with the budget given as log(eps); exact for n*delta far beyond
/// the underflow threshold of eps itself.
OracleResult e1_star_log(const LLRAtomTable& table, double log_epsilon);

/// E*_{1,n}(delta) = e*_{1,n}(e^{-n delta}), computed in the log domain.
OracleResult E1_star(const LLRAtomTable& table, double delta);

/// Independent optimality oracle: direct greedy exchange over all k^n
/// product-space outcomes (no atom table). Limits: alphabet size <= 3,
/// n <= 2; throws TooLarge beyond them.
double lp_cross_check(const TiltedFamily& f, std::int64_t n, double epsilon);

}  // namespace hyptest

#endif
