#include "hyptest/np_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyptest/kahan.hpp"

namespace hyptest {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// C(n+s-1, s-1) with saturation above the atom cap
std::uint64_t composition_count(std::int64_t n, std::size_t s) {
    double c = 1.0;
    for (std::size_t i = 1; i < s; ++i) {
        c *= static_cast<double>(n + static_cast<std::int64_t>(i)) /
             static_cast<double>(i);
        if (c > 4.0e18) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(std::llround(c));
}

}  // namespace

LLRAtomTable build_atom_table(const TiltedFamily& f, std::int64_t n) {
    if (n < 1) throw DomainError("build_atom_table: n must be >= 1");
    const auto& support = f.support();
    const std::size_t s = support.size();
    const std::uint64_t count = composition_count(n, s);
    if (count > LLRAtomTable::kMaxAtoms) {
        throw TooLarge("build_atom_table: composition count exceeds the atom limit",
                       count);
    }

    std::vector<double> log_p(s), log_q(s), llr(s);
    for (std::size_t j = 0; j < s; ++j) {
        log_p[j] = std::log(f.p()[support[j]]);
        log_q[j] = std::log(f.q()[support[j]]);
        llr[j] = f.per_symbol_llr()[support[j]];
    }
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);

    std::vector<LLRAtom> atoms;
    atoms.reserve(count);

    // enumerate compositions c[0..s-1] with sum n; the multinomial mass of
    // a composition is exact up to lgamma rounding
    std::vector<std::int64_t> c(s, 0);
    c[0] = n;
    while (true) {
        double lp = log_n_fact, lq = log_n_fact;
        KahanSum llr_sum;
        for (std::size_t j = 0; j < s; ++j) {
            if (c[j] == 0) continue;
            const double lg = std::lgamma(static_cast<double>(c[j]) + 1.0);
            const double cj = static_cast<double>(c[j]);
            lp += cj * log_p[j] - lg;
            lq += cj * log_q[j] - lg;
            llr_sum.add(cj * llr[j]);
        }
        atoms.push_back({llr_sum.value(), lp, lq});

        // next composition in colex order
        if (c[0] > 0 && s > 1) {
            --c[0];
            ++c[1];
        } else {
            std::size_t j = 1;
            while (j < s && c[j] == 0) ++j;
            if (j + 1 >= s) break;
            c[0] = c[j] - 1;
            c[j] = 0;
            ++c[j + 1];
        }
        if (s == 1) break;
    }

    std::sort(atoms.begin(), atoms.end(),
              [](const LLRAtom& a, const LLRAtom& b) { return a.llr_sum < b.llr_sum; });

    // merge atoms whose LLR values coincide to 1e-12 relative
    std::vector<LLRAtom> merged;
    merged.reserve(atoms.size());
    for (const LLRAtom& a : atoms) {
        if (!merged.empty()) {
            LLRAtom& last = merged.back();
            const double tol = 1e-12 * std::max(1.0, std::abs(last.llr_sum));
            if (std::abs(a.llr_sum - last.llr_sum) <= tol) {
                last.log_p_mass = log_add_exp(last.log_p_mass, a.log_p_mass);
                last.log_q_mass = log_add_exp(last.log_q_mass, a.log_q_mass);
                continue;
            }
        }
        merged.push_back(a);
    }

    LLRAtomTable table;
    table.n_ = n;
    table.atoms_ = std::move(merged);
    table.suffix_log_q_.assign(table.atoms_.size() + 1, kNegInf);
    for (std::size_t i = table.atoms_.size(); i-- > 0;) {
        table.suffix_log_q_[i] =
            log_add_exp(table.suffix_log_q_[i + 1], table.atoms_[i].log_q_mass);
    }
    return table;
}

OracleResult e1_star_log(const LLRAtomTable& table, double log_epsilon) {
    const auto& atoms = table.atoms();
    OracleResult out;
    out.log_epsilon_used = log_epsilon;
    out.epsilon_used = std::exp(std::min(log_epsilon, 0.0));

    if (log_epsilon == kNegInf) {  // eps = 0: no budget at all, so the
        // optimal test always declares P (the supports coincide, leaving no
        // P-null set to reject on) and the first error is exactly one
        out.e1_star = 1.0;
        out.log_e1_star = 0.0;
        out.threshold_llr = atoms.front().llr_sum;
        out.boundary_weight = 0.0;
        out.epsilon_used = 0.0;
        return out;
    }
    if (log_epsilon >= 0.0) {  // eps >= 1: always declare Q
        out.e1_star = 0.0;
        out.log_e1_star = kNegInf;
        out.threshold_llr = atoms.back().llr_sum;
        out.boundary_weight = 1.0;
        out.epsilon_used = 1.0;
        out.log_epsilon_used = 0.0;
        return out;
    }

    // assign whole atoms to declare-Q in ascending LLR order while their
    // cumulative P-mass stays within the budget
    double log_cum_p = kNegInf;
    std::size_t boundary = atoms.size();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double next = log_add_exp(log_cum_p, atoms[i].log_p_mass);
        if (next <= log_epsilon) {
            log_cum_p = next;
        } else {
            boundary = i;
            break;
        }
    }
    if (boundary == atoms.size()) {  // entire space fits the budget
        out.e1_star = 0.0;
        out.log_e1_star = kNegInf;
        out.threshold_llr = atoms.back().llr_sum;
        out.boundary_weight = 1.0;
        return out;
    }

    // randomize on the boundary atom so e2 = eps exactly:
    // w = (eps - cum_p) / p_boundary, computed in the log domain
    double log_budget_left;
    if (log_cum_p == kNegInf) {
        log_budget_left = log_epsilon;
    } else if (log_cum_p >= log_epsilon) {
        log_budget_left = kNegInf;
    } else {
        log_budget_left = log_epsilon + std::log1p(-std::exp(log_cum_p - log_epsilon));
    }
    double log_w = log_budget_left - atoms[boundary].log_p_mass;
    log_w = std::min(log_w, 0.0);

    // e1 = Q(atoms above boundary) + (1 - w) Q(boundary)
    const double log_upper = table.suffix_log_q(boundary + 1);
    double log_one_minus_w;
    if (log_w >= 0.0) {
        log_one_minus_w = kNegInf;
    } else {
        log_one_minus_w = std::log1p(-std::exp(log_w));
    }
    out.log_e1_star =
        log_add_exp(log_upper, atoms[boundary].log_q_mass + log_one_minus_w);
    out.log_e1_star = std::min(out.log_e1_star, 0.0);
    out.e1_star = std::exp(out.log_e1_star);
    out.threshold_llr = atoms[boundary].llr_sum;
    out.boundary_weight = std::exp(log_w);
    return out;
}

OracleResult e1_star(const LLRAtomTable& table, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw DomainError("e1_star: epsilon must lie in [0,1]");
    }
    return e1_star_log(table, epsilon == 0.0 ? kNegInf : std::log(epsilon));
}

OracleResult E1_star(const LLRAtomTable& table, double delta) {
    if (delta < 0.0) throw DomainError("E1_star: delta must be >= 0");
    return e1_star_log(table, -delta * static_cast<double>(table.n()));
}

double lp_cross_check(const TiltedFamily& f, std::int64_t n, double epsilon) {
    const std::size_t k = f.p().size();
    if (k > 3 || n > 2 || n < 1) {
        throw TooLarge("lp_cross_check: limited to alphabet size <= 3 and n <= 2",
                       static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n));
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw DomainError("lp_cross_check: epsilon must lie in [0,1]");
    }

    // full product-space enumeration, linear-domain arithmetic; this path
    // shares no code with the atom-table oracle
    struct Outcome {
        double p_mass, q_mass, ratio;
    };
    std::vector<Outcome> outcomes;
    const std::int64_t total = (n == 1) ? static_cast<std::int64_t>(k)
                                        : static_cast<std::int64_t>(k * k);
    for (std::int64_t code = 0; code < total; ++code) {
        double pm = 1.0, qm = 1.0;
        std::int64_t rem = code;
        for (std::int64_t pos = 0; pos < n; ++pos) {
            const std::size_t sym = static_cast<std::size_t>(rem % k);
            rem /= static_cast<std::int64_t>(k);
            pm *= f.p()[sym];
            qm *= f.q()[sym];
        }
        if (pm == 0.0 && qm == 0.0) continue;
        outcomes.push_back({pm, qm, pm / qm});
    }
    std::sort(outcomes.begin(), outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.ratio < b.ratio; });

    // greedy exchange: declare Q on the smallest likelihood ratios first
    double budget = epsilon;
    double e1 = 0.0;
    for (const Outcome& o : outcomes) e1 += o.q_mass;
    for (const Outcome& o : outcomes) {
        if (o.p_mass <= budget) {
            budget -= o.p_mass;
            e1 -= o.q_mass;
        } else {
            if (o.p_mass > 0.0) e1 -= (budget / o.p_mass) * o.q_mass;
            budget = 0.0;
            break;
        }
    }
    return std::max(e1, 0.0);
}

}  // namespace hyptest
