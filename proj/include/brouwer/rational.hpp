#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "brouwer/errors.hpp"

namespace brouwer {

/// Exact fraction num/den with den > 0 and gcd(num, den) = 1.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    [[nodiscard]] constexpr std::int64_t num() const { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const { return den_; }
    [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    [[nodiscard]] std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p/q" or "p".
    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(text));
            return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw SpecParseError("bad rational '" + text + "'");
        }
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    Rational operator-() const { return {-num_, den_}; }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

    friend Rational abs(const Rational& r) { return {r.num_ < 0 ? -r.num_ : r.num_, r.den_}; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const auto g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Nearest k/denominator to x; throws SnapFailure when farther than tolerance.
inline Rational snap_to_fraction(double x, std::int64_t denominator, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("snap tolerance must be positive");
    if (denominator < 1) throw std::invalid_argument("snap denominator must be >= 1");
    if (!std::isfinite(x)) throw SnapFailure(x, 0.0, INFINITY);
    const double scaled = x * static_cast<double>(denominator);
    const double k = std::round(scaled);
    const double nearest = k / static_cast<double>(denominator);
    const double gap = std::abs(x - nearest);
    if (gap > tolerance) throw SnapFailure(x, nearest, gap);
    return {static_cast<std::int64_t>(k), denominator};
}

inline Rational snap_to_half_integer(double x, double tolerance = 0.02) {
    return snap_to_fraction(x, 2, tolerance);
}

}  // namespace brouwer
