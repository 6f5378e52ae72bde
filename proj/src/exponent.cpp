#include "dspaces/exponent.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "dspaces/errors.hpp"

namespace dspaces {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("cannot parse exponent '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

Exponent Exponent::real(double v) {
    if (std::isnan(v)) throw ParseError("exponent is NaN");
    if (std::isinf(v)) {
        if (v < 0) throw ParseError("exponent is -inf");
        return infinity();
    }
    Exponent e;
    e.exact_.reset();
    e.value_ = v;
    return e;
}

Exponent Exponent::infinity() {
    Exponent e;
    e.exact_.reset();
    e.value_ = std::numeric_limits<double>::infinity();
    e.inf_ = true;
    return e;
}

Exponent Exponent::parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty exponent literal");
    if (text == "inf" || text == "+inf" || text == "infinity" || text == "Inf") return infinity();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_int(text.substr(0, slash), text);
        const auto den = parse_int(text.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Exponent(Rational(num, den));
    }
    if (text.find_first_of(".eE") == std::string_view::npos) return Exponent(Rational(parse_int(text, text)));
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("cannot parse exponent '" + std::string(text) + "'");
    }
    return real(v);
}

Exponent Exponent::reciprocal() const {
    if (inf_) return Exponent(Rational(0));
    if (exact_) {
        if (exact_->numerator() == 0) return infinity();
        return Exponent(Rational(1) / *exact_);
    }
    if (value_ == 0.0) return infinity();
    return real(1.0 / value_);
}

std::string Exponent::to_string() const {
    if (inf_) return "inf";
    std::ostringstream os;
    if (exact_) {
        os << exact_->numerator();
        if (exact_->denominator() != 1) os << '/' << exact_->denominator();
    } else {
        os.precision(17);
        os << value_;
    }
    return os.str();
}

Exponent operator+(const Exponent& a, const Exponent& b) {
    if (a.inf_ || b.inf_) return Exponent::infinity();
    if (a.exact_ && b.exact_) return Exponent(*a.exact_ + *b.exact_);
    return Exponent::real(a.value_ + b.value_);
}

Exponent operator-(const Exponent& a) {
    if (a.inf_) throw ParameterError("negating an infinite exponent");
    if (a.exact_) return Exponent(-*a.exact_);
    return Exponent::real(-a.value_);
}

Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

Exponent operator*(const Exponent& a, const Exponent& b) {
    if (a.inf_ || b.inf_) throw ParameterError("product with an infinite exponent");
    if (a.exact_ && b.exact_) return Exponent(*a.exact_ * *b.exact_);
    return Exponent::real(a.value_ * b.value_);
}

Exponent operator/(const Exponent& a, const Exponent& b) { return a * b.reciprocal(); }

Comparison compare(const Exponent& a, const Exponent& b, double tol) {
    if (a.is_inf() || b.is_inf()) return {a.is_inf() == b.is_inf() ? 0 : (a.is_inf() ? 1 : -1), false};
    if (a.rational() && b.rational()) {
        const auto& x = *a.rational();
        const auto& y = *b.rational();
        return {x < y ? -1 : (y < x ? 1 : 0), false};
    }
    const double d = a.value() - b.value();
    const double scale = std::max({1.0, std::abs(a.value()), std::abs(b.value())});
    if (std::abs(d) <= tol * scale) return {0, true};
    return {d < 0 ? -1 : 1, true};
}

}  // namespace dspaces
