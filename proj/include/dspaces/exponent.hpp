#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace dspaces {

using Rational = boost::rational<std::int64_t>;

/// An extended real parameter: an exact rational, a floating-point value, or
/// +infinity.  Classification is discontinuous at boundaries such as
/// tau = 1/p, so exact inputs are compared exactly.
class Exponent {
public:
    Exponent() : Exponent(Rational(0)) {}
    Exponent(Rational r) : exact_(r), value_(boost::rational_cast<double>(r)) {}
    static Exponent exact(std::int64_t num, std::int64_t den = 1) { return Exponent(Rational(num, den)); }
    static Exponent real(double v);
    static Exponent infinity();

    /// Accepts "inf", integers, "a/b" (exact) and decimal/scientific literals (inexact).
    static Exponent parse(std::string_view text);

    bool is_inf() const { return inf_; }
    bool is_exact() const { return exact_.has_value() || inf_; }
    double value() const { return value_; }
    const std::optional<Rational>& rational() const { return exact_; }

    /// 1/x with 1/inf = 0 and 1/0 = inf.
    Exponent reciprocal() const;

    std::string to_string() const;

    friend Exponent operator+(const Exponent& a, const Exponent& b);
    friend Exponent operator-(const Exponent& a, const Exponent& b);
    friend Exponent operator*(const Exponent& a, const Exponent& b);
    friend Exponent operator/(const Exponent& a, const Exponent& b);
    friend Exponent operator-(const Exponent& a);

private:
    std::optional<Rational> exact_;
    double value_ = 0.0;
    bool inf_ = false;
};

/// Result of comparing two exponents; `inexact` is set when a floating-point
/// tolerance decided the outcome.
struct Comparison {
    int sign = 0;
    bool inexact = false;
};

inline constexpr double kBoundaryTolerance = 1e-12;

Comparison compare(const Exponent& a, const Exponent& b, double tol = kBoundaryTolerance);

}  // namespace dspaces
