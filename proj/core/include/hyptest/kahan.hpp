#ifndef HYPTEST_KAHAN_HPP
#define HYPTEST_KAHAN_HPP

#include <cmath>

namespace hyptest {

/// Compensated (Kahan-Neumaier) accumulator for sums over the alphabet.
class KahanSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace hyptest

#endif
