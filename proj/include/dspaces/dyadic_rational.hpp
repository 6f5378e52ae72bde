#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dspaces {

/// Exact nonnegative dyadic rational m * 2^e.
///
/// Cube volumes and shell measures are all of this form, so partitions of a
/// cube can be summed without rounding.  The mantissa is 128 bits wide, which
/// covers exponent spans of up to 127 within a single value; arithmetic that
/// would exceed this throws std::overflow_error.
class DyadicRational {
public:
    DyadicRational() = default;

    static DyadicRational pow2(std::int64_t exponent);
    static DyadicRational from_integer(std::uint64_t value);

    bool is_zero() const { return mantissa_ == 0; }
    std::int64_t exponent() const { return exponent_; }

    /// log2 of the value; -inf for zero.
    double log2() const;
    double to_double() const;
    std::string to_string() const;

    DyadicRational& operator+=(const DyadicRational& other);
    /// Requires *this >= other.
    DyadicRational& operator-=(const DyadicRational& other);

    friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
    friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
        return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
    }
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

private:
    using Mantissa = unsigned __int128;

    DyadicRational(Mantissa m, std::int64_t e) : mantissa_(m), exponent_(e) { normalize(); }
    void normalize();
    // Both operands rewritten with the smaller exponent.
    static void align(Mantissa& a, std::int64_t ea, Mantissa& b, std::int64_t eb, std::int64_t& e);

    Mantissa mantissa_ = 0;
    std::int64_t exponent_ = 0;
};

}  // namespace dspaces
