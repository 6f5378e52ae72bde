#include "dspaces/dyadic_rational.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dspaces {

namespace {

int bit_width128(unsigned __int128 v) {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    if (hi != 0) return 64 + std::bit_width(hi);
    return std::bit_width(static_cast<std::uint64_t>(v));
}

}  // namespace

DyadicRational DyadicRational::pow2(std::int64_t exponent) { return DyadicRational(1, exponent); }

DyadicRational DyadicRational::from_integer(std::uint64_t value) { return DyadicRational(value, 0); }

void DyadicRational::normalize() {
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    while ((mantissa_ & 1) == 0) {
        mantissa_ >>= 1;
        ++exponent_;
    }
}

void DyadicRational::align(Mantissa& a, std::int64_t ea, Mantissa& b, std::int64_t eb, std::int64_t& e) {
    if (a == 0) {
        e = eb;
        return;
    }
    if (b == 0) {
        e = ea;
        return;
    }
    e = std::min(ea, eb);
    auto lift = [](Mantissa& m, std::int64_t shift) {
        if (shift == 0) return;
        if (shift >= 127 || bit_width128(m) + shift > 127) {
            throw std::overflow_error("DyadicRational: exponent span exceeds 127 bits");
        }
        m <<= shift;
    };
    lift(a, ea - e);
    lift(b, eb - e);
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& other) {
    Mantissa a = mantissa_, b = other.mantissa_;
    std::int64_t e = 0;
    align(a, exponent_, b, other.exponent_, e);
    *this = DyadicRational(a + b, e);
    return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& other) {
    Mantissa a = mantissa_, b = other.mantissa_;
    std::int64_t e = 0;
    align(a, exponent_, b, other.exponent_, e);
    if (b > a) throw std::domain_error("DyadicRational: negative difference");
    *this = DyadicRational(a - b, e);
    return *this;
}

std::strong_ordering operator<=>(const DyadicRational& x, const DyadicRational& y) {
    if (x.mantissa_ == 0 || y.mantissa_ == 0) return x.mantissa_ <=> y.mantissa_;
    // Compare by magnitude first so huge exponent gaps never need alignment.
    const std::int64_t top_x = x.exponent_ + bit_width128(x.mantissa_);
    const std::int64_t top_y = y.exponent_ + bit_width128(y.mantissa_);
    if (top_x != top_y) return top_x <=> top_y;
    auto a = x.mantissa_, b = y.mantissa_;
    std::int64_t e = 0;
    DyadicRational::align(a, x.exponent_, b, y.exponent_, e);
    return a <=> b;
}

double DyadicRational::log2() const {
    if (mantissa_ == 0) return -std::numeric_limits<double>::infinity();
    const int width = bit_width128(mantissa_);
    if (width <= 53) return std::log2(static_cast<double>(mantissa_)) + static_cast<double>(exponent_);
    // Keep the top 64 bits; the dropped tail is below double resolution.
    const int drop = width - 64;
    const auto top = static_cast<std::uint64_t>(mantissa_ >> drop);
    return std::log2(static_cast<long double>(top)) + static_cast<double>(exponent_ + drop);
}

double DyadicRational::to_double() const {
    if (mantissa_ == 0) return 0.0;
    return std::ldexp(static_cast<double>(mantissa_), static_cast<int>(exponent_));
}

std::string DyadicRational::to_string() const {
    std::ostringstream os;
    auto m = mantissa_;
    std::string digits;
    if (m == 0) digits = "0";
    while (m != 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    }
    os << digits << "*2^" << exponent_;
    return os.str();
}

}  // namespace dspaces
