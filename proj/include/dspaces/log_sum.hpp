#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dspaces {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log2(2^a + 2^b)
inline double log2_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == kNegInf) return a;
    return a + std::log1p(std::exp2(b - a)) / std::numbers::ln2;
}

/// Streaming base-2 log-sum-exp.  Keeps the running maximum factored out so
/// terms spanning thousands of binary orders of magnitude accumulate safely.
class Log2Sum {
public:
    void add(double log2_term) {
        if (log2_term == kNegInf) return;
        if (log2_term <= max_) {
            scaled_ += std::exp2(log2_term - max_);
        } else {
            scaled_ = (max_ == kNegInf ? 0.0 : scaled_ * std::exp2(max_ - log2_term)) + 1.0;
            max_ = log2_term;
        }
    }

    bool empty() const { return max_ == kNegInf; }
    double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log2(scaled_); }

private:
    double max_ = kNegInf;
    double scaled_ = 0.0;
};

}  // namespace dspaces
