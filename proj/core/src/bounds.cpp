#include "hyptest/bounds.hpp"

#include <cmath>
#include <limits>

#include "hyptest/gaussian.hpp"

namespace hyptest {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

BoundQuery BoundQuery::from_epsilon(const TiltedFamily& f, std::int64_t n,
                                    double epsilon) {
    if (n < 1) throw DomainError("BoundQuery: n must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("BoundQuery: epsilon must lie in (0,1)");
    }
    BoundQuery q;
    q.family = &f;
    q.n = n;
    q.epsilon = epsilon;
    q.log_epsilon = std::log(epsilon);
    q.delta = -q.log_epsilon / static_cast<double>(n);
    return q;
}

BoundQuery BoundQuery::from_delta(const TiltedFamily& f, std::int64_t n,
                                  double delta) {
    if (n < 1) throw DomainError("BoundQuery: n must be >= 1");
    if (!(delta > 0.0)) throw DomainError("BoundQuery: delta must be positive");
    BoundQuery q;
    q.family = &f;
    q.n = n;
    q.delta = delta;
    q.log_epsilon = -delta * static_cast<double>(n);
    q.epsilon = std::exp(q.log_epsilon);  // may underflow to 0
    return q;
}

double one_shot_converse_rhs(double e2, double p_tail, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("one_shot_converse_rhs: gamma must be > 0");
    return std::max((1.0 - e2 - p_tail) / gamma, 0.0);
}

SteinBound stein_converse(const BoundQuery& q, double delta_slack) {
    if (!(delta_slack > 0.0)) {
        throw DomainError("stein_converse: Delta must be > 0");
    }
    const LLRMoments mom = llr_moments(q.family->p(), q.family->p(), q.family->q());
    if (mom.degenerate_variance) {
        throw DegenerateFamily("stein_converse: LLR variance vanishes");
    }
    const double eps = q.epsilon;
    const double b_plus = *mom.be_constant + delta_slack;
    const double threshold = (b_plus / (1.0 - eps)) * (b_plus / (1.0 - eps));
    SteinBound out;
    out.min_valid_n = static_cast<std::int64_t>(std::ceil(threshold));
    if (static_cast<double>(q.n) < threshold) {
        return out;  // invalid, carries the minimal valid n
    }
    out.valid = true;
    const double sn = std::sqrt(static_cast<double>(q.n));
    const double arg = eps + b_plus / sn;
    if (arg >= 1.0) {
        out.value = kNegInf;  // Phi^{-1}(1) = +inf; the bound degenerates
        return out;
    }
    const double sigma = std::sqrt(mom.variance);
    out.value = -static_cast<double>(q.n) * mom.mean -
                sn * sigma * gaussian::phi_inv(arg) -
                0.5 * std::log(static_cast<double>(q.n)) + std::log(delta_slack);
    return out;
}

SteinBound stein_achievability(const BoundQuery& q) {
    const LLRMoments mom = llr_moments(q.family->p(), q.family->p(), q.family->q());
    if (mom.degenerate_variance) {
        throw DegenerateFamily("stein_achievability: LLR variance vanishes");
    }
    const double eps = q.epsilon;
    SteinBound out;
    if (!(eps > 0.0)) {
        out.min_valid_n = std::numeric_limits<std::int64_t>::max();
        return out;
    }
    const double threshold = (*mom.be_constant / eps) * (*mom.be_constant / eps);
    out.min_valid_n = static_cast<std::int64_t>(std::floor(threshold)) + 1;
    if (static_cast<double>(q.n) <= threshold) {
        return out;
    }
    out.valid = true;
    const double sn = std::sqrt(static_cast<double>(q.n));
    const double sigma = std::sqrt(mom.variance);
    const double arg = eps - *mom.be_constant / sn;
    out.value = -static_cast<double>(q.n) * mom.mean -
                sn * sigma * gaussian::phi_inv(arg) -
                0.5 * std::log(static_cast<double>(q.n)) +
                std::log(1.0 / (kSqrt2Pi * sigma) + 2.0 * *mom.be_constant);
    return out;
}

double be2_bound(double sigma, double rho, std::int64_t n, double x) {
    if (!(sigma > 0.0)) throw DomainError("be2_bound: sigma must be > 0");
    if (n < 1) throw DomainError("be2_bound: n must be >= 1");
    if (rho < 0.0) throw DomainError("be2_bound: rho must be >= 0");
    return (1.0 / kSqrt2Pi + rho / (sigma * sigma)) * std::exp(-x) /
           (std::sqrt(static_cast<double>(n)) * sigma);
}

double achievability_constant(const ExponentSolution& sol) {
    const double sigma = std::sqrt(sol.sigma_star_sq);
    const double a = sol.alpha_star;
    const double ratio = sol.rho_star / (sigma * sigma * sigma);
    return std::log(1.0 / (sigma * a * kSqrt2Pi) + ratio) +
           a / (1.0 - a) * std::log(1.0 / (sigma * (1.0 - a) * kSqrt2Pi) + ratio);
}

ConverseConstant converse_constant(const ExponentSolution& sol,
                                   const ExtremalMoments& ext) {
    if (!(ext.sigma0_sq > 0.0)) {
        throw DegenerateFamily("converse_constant: sigma0^2 must be positive");
    }
    const double a = sol.alpha_star;
    const double s2 = sol.sigma_star_sq;
    const double rho0 = ext.rho0;
    const double sigma0_cubed = std::pow(ext.sigma0_sq, 1.5);
    const double be_ratio = rho0 / sigma0_cubed + 1.0;

    ConverseConstant out;
    out.m = -2.0 * kSqrt2Pi * (1.0 - a) * be_ratio * std::sqrt(s2 + rho0);
    out.c_prime = std::log(2.0) / (1.0 - a) -
                  (s2 + 2.0 * rho0) * (2.0 - a) / (2.0 * (1.0 - a)) -
                  std::abs(ext.sigma0_sq - rho0) / 2.0 + out.m;

    // n0: the inequality log n <= (1-a*) sigma*^2 sqrt(n) holds at n = 1,
    // can fail on an intermediate range, then holds for all large n; n0 is
    // one past the largest violator.
    const double c = (1.0 - a) * s2;
    // analytic bracket: 2 log t <= c t for all t >= t_up, n = t^2
    const double t_up = std::max(1.0, (4.0 / c) * std::max(1.0, std::log(4.0 / c)));
    const std::int64_t n_up = static_cast<std::int64_t>(std::ceil(t_up * t_up)) + 1;
    std::int64_t n0 = 1;
    for (std::int64_t n = n_up; n >= 2; --n) {
        if (std::log(static_cast<double>(n)) > c * std::sqrt(static_cast<double>(n))) {
            n0 = n + 1;
            break;
        }
    }
    out.n0 = n0;

    const double t1 = 7.0 * be_ratio * be_ratio;
    const double num = s2 + 2.0 * rho0 - 2.0 * out.m + 2.0 * std::log(2.0);
    const double t2 = num * num / ((1.0 - a) * (1.0 - a) * s2 * s2);
    out.n_min = std::max<std::int64_t>(
        {static_cast<std::int64_t>(std::ceil(t1)),
         static_cast<std::int64_t>(std::ceil(t2)), n0});
    return out;
}

BoundReport approximations(const BoundQuery& q, const ExponentSolution& sol,
                           const LLRMoments& mom) {
    BoundReport r;
    r.n = q.n;
    r.epsilon = q.epsilon;
    r.delta = q.delta;
    r.log_epsilon = q.log_epsilon;
    const double n = static_cast<double>(q.n);

    r.log_stein = -n * mom.mean;
    r.stein = std::exp(r.log_stein);

    if (q.epsilon > 0.0 && q.epsilon < 1.0) {
        const double sigma = std::sqrt(mom.variance);
        r.log_strassen = r.log_stein -
                         std::sqrt(n) * sigma * gaussian::phi_inv(q.epsilon) -
                         0.5 * std::log(n);
        r.strassen = std::exp(*r.log_strassen);
        r.strassen_clamped = std::min(*r.strassen, 1.0);
    }

    r.exponent_valid = true;
    r.alpha_star = sol.alpha_star;
    r.d_delta = sol.d_delta;
    r.log_hoeffding = -n * sol.d_delta;
    r.hoeffding = std::exp(*r.log_hoeffding);
    r.log_new = -n * sol.d_delta -
                std::log(n) / (2.0 * (1.0 - sol.alpha_star));
    r.new_approx = std::exp(*r.log_new);
    r.C = achievability_constant(sol);
    return r;
}

BoundReport full_report(const BoundQuery& q, double delta_slack) {
    const TiltedFamily& f = *q.family;
    const LLRMoments mom = llr_moments(f.p(), f.p(), f.q());
    if (mom.degenerate_variance) {
        throw DegenerateFamily("full_report: P = Q on the support");
    }

    BoundReport r;
    if (q.delta > 0.0 && q.delta < f.kl_qp()) {
        const ExponentSolution sol = solve_alpha_star(f, q.delta);
        r = approximations(q, sol, mom);
        const ExtremalMoments ext = extremal_moments(f);
        const ConverseConstant cc = converse_constant(sol, ext);
        r.c_prime = cc.c_prime;
        r.m = cc.m;
        r.n0 = cc.n0;
        r.n_min_converse = cc.n_min;
    } else {
        // Stein-regime columns only
        r.n = q.n;
        r.epsilon = q.epsilon;
        r.delta = q.delta;
        r.log_epsilon = q.log_epsilon;
        const double n = static_cast<double>(q.n);
        r.log_stein = -n * mom.mean;
        r.stein = std::exp(r.log_stein);
        if (q.epsilon > 0.0 && q.epsilon < 1.0) {
            const double sigma = std::sqrt(mom.variance);
            r.log_strassen = r.log_stein -
                             std::sqrt(n) * sigma * gaussian::phi_inv(q.epsilon) -
                             0.5 * std::log(n);
            r.strassen = std::exp(*r.log_strassen);
            r.strassen_clamped = std::min(*r.strassen, 1.0);
        }
    }

    if (q.epsilon > 0.0 && q.epsilon < 1.0) {
        const SteinBound conv = stein_converse(q, delta_slack);
        const SteinBound ach = stein_achievability(q);
        r.stein_conv_min_n = conv.min_valid_n;
        r.stein_ach_min_n = ach.min_valid_n;
        if (conv.valid) r.stein_conv_lb = conv.value;
        if (ach.valid) r.stein_ach_ub = ach.value;
    }
    return r;
}

}  // namespace hyptest
