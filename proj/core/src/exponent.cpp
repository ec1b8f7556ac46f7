#include "hyptest/exponent.hpp"

#include <algorithm>
#include <cmath>

#include "hyptest/kahan.hpp"

namespace hyptest {

namespace {

TiltedLLRMoments moments_of(const FiniteDistribution& w,
                            const std::vector<double>& llr,
                            const std::vector<std::size_t>& support) {
    KahanSum mean_sum;
    for (std::size_t i : support) mean_sum.add(w[i] * llr[i]);
    const double mean = mean_sum.value();
    KahanSum var_sum, third_sum, abs_third_sum;
    for (std::size_t i : support) {
        const double c = llr[i] - mean;
        var_sum.add(w[i] * c * c);
        third_sum.add(w[i] * c * c * c);
        abs_third_sum.add(w[i] * std::abs(c * c * c));
    }
    return {mean, std::max(var_sum.value(), 0.0), third_sum.value(),
            std::max(abs_third_sum.value(), 0.0)};
}

}  // namespace

TiltedLLRMoments tilted_llr_moments(const TiltedFamily& f, double alpha) {
    return moments_of(f.tilt(alpha), f.per_symbol_llr(), f.support());
}

double g_alpha(const TiltedFamily& f, double alpha) {
    const ZDerivatives zd = f.z_alpha_derivatives(alpha);
    return -std::log(zd.z) - (1.0 - alpha) * zd.d1 / zd.z;
}

ExponentSolution solve_alpha_star(const TiltedFamily& f, double delta) {
    const double d_qp = f.kl_qp();
    if (d_qp < 1e-14) {
        throw DegenerateFamily("solve_alpha_star: P = Q, the delta range is empty");
    }
    if (!(delta > 0.0 && delta < d_qp)) {
        throw DeltaOutOfRange("solve_alpha_star: delta must lie in (0, D(Q||P))");
    }
    // g is continuous and strictly decreasing with g(0+) = D(Q||P), g(1-) = 0
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (g_alpha(f, mid) > delta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double alpha_star = 0.5 * (lo + hi);

    const FiniteDistribution q_star = f.tilt(alpha_star);
    const TiltedLLRMoments mom =
        moments_of(q_star, f.per_symbol_llr(), f.support());

    ExponentSolution sol;
    sol.delta = delta;
    sol.alpha_star = alpha_star;
    sol.d_delta = kl_divergence(q_star, f.q());
    sol.sigma_star_sq = mom.variance;
    sol.rho_star = mom.abs_third_central;
    return sol;
}

ExponentDerivatives exponent_derivatives(const TiltedFamily& f, double alpha) {
    const TiltedLLRMoments m = tilted_llr_moments(f, alpha);
    ExponentDerivatives d;
    d.d_dp = -(1.0 - alpha) * m.variance;
    d.d_dq = alpha * m.variance;
    d.d2_dp = m.variance - (1.0 - alpha) * m.third_central;
    d.d2_dq = m.variance + alpha * m.third_central;
    return d;
}

namespace {

// golden-section minimizer of fn over [a,b]; assumes local unimodality
template <typename Fn>
double golden_min(Fn&& fn, double a, double b) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    return std::min(fc, fd);
}

}  // namespace

ExtremalMoments extremal_moments(const TiltedFamily& f) {
    constexpr int kGrid = 1025;
    auto var_at = [&](double a) { return tilted_llr_moments(f, a).variance; };
    auto neg_rho_at = [&](double a) {
        return -tilted_llr_moments(f, a).abs_third_central;
    };

    double best_var = var_at(0.0);
    int best_var_i = 0;
    double best_rho = -neg_rho_at(0.0);
    int best_rho_i = 0;
    for (int i = 1; i < kGrid; ++i) {
        const double a = static_cast<double>(i) / (kGrid - 1);
        const double v = var_at(a);
        if (v < best_var) {
            best_var = v;
            best_var_i = i;
        }
        const double r = tilted_llr_moments(f, a).abs_third_central;
        if (r > best_rho) {
            best_rho = r;
            best_rho_i = i;
        }
    }
    const double step = 1.0 / (kGrid - 1);
    auto bracket = [&](int i) {
        const double lo = std::max(0.0, (i - 1) * step);
        const double hi = std::min(1.0, (i + 1) * step);
        return std::pair{lo, hi};
    };
    const auto [vlo, vhi] = bracket(best_var_i);
    const auto [rlo, rhi] = bracket(best_rho_i);

    ExtremalMoments out;
    out.sigma0_sq = std::min(best_var, golden_min(var_at, vlo, vhi));
    out.rho0 = std::max(best_rho, -golden_min(neg_rho_at, rlo, rhi));

    if (out.sigma0_sq < 1e-14) {
        throw DegenerateFamily("extremal_moments: infimum variance vanishes (P = Q)");
    }
    return out;
}

}  // namespace hyptest
