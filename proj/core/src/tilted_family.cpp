#include "hyptest/tilted_family.hpp"

#include <cmath>
#include <limits>

#include "hyptest/kahan.hpp"

namespace hyptest {

TiltedFamily::TiltedFamily(FiniteDistribution p, FiniteDistribution q)
    : p_(std::move(p)), q_(std::move(q)) {
    if (!p_.same_support(q_)) {
        throw SupportMismatch(
            "TiltedFamily: p and q must be mutually absolutely continuous");
    }
    const std::size_t k = p_.size();
    llr_.assign(k, 0.0);
    log_p_.assign(k, -std::numeric_limits<double>::infinity());
    log_q_.assign(k, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < k; ++i) {
        if (p_[i] > 0.0) {
            support_.push_back(i);
            log_p_[i] = std::log(p_[i]);
            log_q_[i] = std::log(q_[i]);
            llr_[i] = log_p_[i] - log_q_[i];
        }
    }
    if (support_.empty()) {
        throw SupportMismatch("TiltedFamily: empty support");
    }
    kl_pq_ = kl_divergence(p_, q_);
    kl_qp_ = kl_divergence(q_, p_);
}

double TiltedFamily::z_alpha(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("z_alpha: alpha must lie in [0,1]");
    }
    KahanSum sum;
    for (std::size_t i : support_) {
        sum.add(std::exp(alpha * log_p_[i] + (1.0 - alpha) * log_q_[i]));
    }
    return sum.value();
}

ZDerivatives TiltedFamily::z_alpha_derivatives(double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("z_alpha_derivatives: alpha must lie in (0,1)");
    }
    KahanSum z, d1, d2, d3;
    for (std::size_t i : support_) {
        const double w = std::exp(alpha * log_p_[i] + (1.0 - alpha) * log_q_[i]);
        const double h = llr_[i];
        z.add(w);
        d1.add(w * h);
        d2.add(w * h * h);
        d3.add(w * h * h * h);
    }
    return {z.value(), d1.value(), std::max(d2.value(), 0.0), d3.value()};
}

FiniteDistribution TiltedFamily::tilt(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("tilt: alpha must lie in [0,1]");
    }
    if (alpha == 0.0) return q_;
    if (alpha == 1.0) return p_;
    std::vector<double> w(p_.size(), 0.0);
    KahanSum total;
    for (std::size_t i : support_) {
        w[i] = std::exp(alpha * log_p_[i] + (1.0 - alpha) * log_q_[i]);
        total.add(w[i]);
    }
    const double z = total.value();
    for (double& v : w) v /= z;
    // renormalize residual rounding so the constructor's 1e-12 check holds
    KahanSum check;
    for (double v : w) check.add(v);
    const double c = check.value();
    for (double& v : w) v /= c;
    return FiniteDistribution(std::move(w));
}

double chernoff_information(const TiltedFamily& f) {
    // golden-section on convex log Z over [0,1]
    constexpr double inv_phi = 0.6180339887498949;
    double a = 0.0, b = 1.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = std::log(f.z_alpha(c));
    double fd = std::log(f.z_alpha(d));
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = std::log(f.z_alpha(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = std::log(f.z_alpha(d));
        }
    }
    const double m = std::min(fc, fd);
    return std::max(-m, 0.0);
}

}  // namespace hyptest
