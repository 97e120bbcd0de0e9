#pragma once

#include <string>
#include <utility>

#include "brouwer/models.hpp"
#include "brouwer/rational.hpp"

namespace brouwer {

/// Exact point with rational coordinates.
struct RationalPoint {
    Rational x;
    Rational y;
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// T1^n1 T2^n2. The group is free abelian on T1, T2, so elements are pairs added componentwise.
struct TwistElement {
    long n1 = 0;
    long n2 = 0;

    [[nodiscard]] bool identity() const { return n1 == 0 && n2 == 0; }
    [[nodiscard]] TwistElement inverse() const { return {-n1, -n2}; }

    /// Shift applied to the orbit on y = 1 (T1 moves it, T2 fixes it) and on y = 2.
    [[nodiscard]] std::pair<long, long> line_action() const { return {n1, n2}; }

    /// Exact action (x, y) -> (x + n1 (2 - y) + n2 (y - 1), y).
    [[nodiscard]] RationalPoint apply(const RationalPoint& p) const {
        return {p.x + Rational(n1) * (Rational(2) - p.y) + Rational(n2) * (p.y - Rational(1)), p.y};
    }

    [[nodiscard]] PlanarMap map() const { return twist_word_map(static_cast<double>(n1), static_cast<double>(n2)); }

    [[nodiscard]] std::string str() const { return "T1^" + std::to_string(n1) + " T2^" + std::to_string(n2); }

    friend TwistElement operator*(TwistElement a, TwistElement b) { return {a.n1 + b.n1, a.n2 + b.n2}; }
    friend bool operator==(const TwistElement&, const TwistElement&) = default;
};

inline constexpr TwistElement kT1{1, 0};
inline constexpr TwistElement kT2{0, 1};

/// The unit translation as an exact map.
inline RationalPoint translate_exact(const RationalPoint& p) { return {p.x + Rational(1), p.y}; }

}  // namespace brouwer
