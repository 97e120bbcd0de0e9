#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "brouwer/geometry.hpp"
#include "brouwer/rational.hpp"
#include "brouwer/sampling.hpp"

using namespace brouwer;

TEST(Rational, NormalizesSignAndGcd) {
    const Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(Rational, ExactArithmetic) {
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(1, 6) * Rational(3), Rational(1, 2));
    EXPECT_EQ(Rational(1, 2) - Rational(1, 2), Rational(0));
    EXPECT_EQ(Rational(3, 4) / Rational(3, 2), Rational(1, 2));
    EXPECT_TRUE(Rational(-1, 2) < Rational(1, 3));
    EXPECT_EQ(abs(Rational(-5, 2)), Rational(5, 2));
    EXPECT_EQ(Rational::parse("-7/14"), Rational(-1, 2));
    EXPECT_EQ(Rational::parse("3"), Rational(3));
    EXPECT_THROW(Rational::parse("x/2"), SpecParseError);
}

TEST(Rational, AssociativeAndNormalizationIdempotent) {
    Rng rng(11);
    for (int k = 0; k < 500; ++k) {
        const Rational a(rng.integer(-50, 50), rng.integer(1, 30)), b(rng.integer(-50, 50), rng.integer(1, 30)),
            c(rng.integer(-50, 50), rng.integer(1, 30));
        EXPECT_EQ((a + b) + c, a + (b + c));
        const Rational again(a.num(), a.den());
        EXPECT_EQ(again.num(), a.num());
        EXPECT_EQ(again.den(), a.den());
    }
}

TEST(Snap, Examples) {
    EXPECT_EQ(snap_to_half_integer(0.4999997, 0.02), Rational(1, 2));
    EXPECT_EQ(snap_to_half_integer(0.0, 1e-9), Rational(0));
    EXPECT_THROW(snap_to_half_integer(0.27, 0.02), SnapFailure);
    try {
        snap_to_half_integer(0.27, 0.02);
    } catch (const SnapFailure& e) {
        EXPECT_DOUBLE_EQ(e.value, 0.27);
        EXPECT_DOUBLE_EQ(e.nearest, 0.5);
        EXPECT_NEAR(e.gap, 0.23, 1e-12);
    }
    EXPECT_THROW(snap_to_half_integer(0.5, 0.0), std::invalid_argument);
}

TEST(Snap, HalfIntegersWithinTolerance) {
    Rng rng(5);
    for (int k = 0; k < 2000; ++k) {
        const long n = rng.integer(-2'000'000, 2'000'000);
        const double eps = rng.uniform(-0.0199, 0.0199);
        EXPECT_EQ(snap_to_half_integer(n / 2.0 + eps, 0.02), Rational(n, 2));
    }
}

TEST(Angles, TurnAngleRange) {
    EXPECT_NEAR(turn_angle({1, 0}, {0, 1}), kPi / 2, 1e-15);
    EXPECT_NEAR(turn_angle({1, 0}, {0, -1}), -kPi / 2, 1e-15);
    EXPECT_NEAR(turn_angle({1, 0}, {-1, 0}), kPi, 1e-15);
}

TEST(LiftAngles, Examples) {
    const std::vector<Vector> constant{{1, 0}, {1, 0}, {1, 0}};
    EXPECT_DOUBLE_EQ(lift_angles(constant).winding(), 0.0);

    const std::vector<Vector> quarter{{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}};
    const auto lift = lift_angles(quarter);
    EXPECT_NEAR(lift.angles.back() - lift.angles.front(), kPi, 1e-15);
    EXPECT_NEAR(lift.winding(), 0.5, 1e-15);

    const std::vector<Vector> flip{{1, 0}, {-1, 0}};
    try {
        lift_angles(flip);
        FAIL() << "expected AmbiguousStepError";
    } catch (const AmbiguousStepError& e) {
        EXPECT_EQ(e.index, 1u);
    }
    const std::vector<Vector> zero{{1, 0}, {0, 0}};
    EXPECT_THROW(lift_angles(zero), ZeroVectorError);
}

TEST(LiftAngles, ReversalAntisymmetric) {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        std::vector<Vector> v;
        double a = rng.uniform(-kPi, kPi);
        for (int i = 0; i < 30; ++i) {
            const double m = rng.uniform(0.5, 2);
            v.push_back({m * std::cos(a), m * std::sin(a)});
            a += rng.uniform(-1.4, 1.4);
        }
        const std::vector<Vector> r(v.rbegin(), v.rend());
        EXPECT_NEAR(lift_angles(v).winding(), -lift_angles(r).winding(), 1e-12);
    }
}

TEST(Curve, PolylineEvaluation) {
    const auto c = Curve::polyline({{0, 0}, {1, 0}, {1, 2}});
    EXPECT_EQ(c.at(0.0), (Point{0, 0}));
    EXPECT_EQ(c.at(1.0), (Point{1, 2}));
    EXPECT_EQ(c.at(0.5), (Point{1, 0}));
    EXPECT_EQ(c.at(0.75), (Point{1, 1}));
    EXPECT_FALSE(c.closed());
    EXPECT_EQ(c.describe(), "0,0;1,0;1,2");
    EXPECT_NEAR(c.total_turning(), kPi / 2, 1e-15);
    EXPECT_NEAR(c.tangent_angle(0.0), 0.0, 1e-15);
    EXPECT_NEAR(c.tangent_angle(1.0), kPi / 2, 1e-15);
    EXPECT_THROW(Curve::polyline({{0, 0}}), std::invalid_argument);
    EXPECT_THROW(Curve::polyline({{0, 0}, {0, 0}}), std::invalid_argument);
    EXPECT_THROW(Curve::polyline({{0, 0}, {NAN, 1}}), std::invalid_argument);
}

TEST(Curve, SubdivideExamples) {
    const auto seg = Curve::segment({0, 1}, {0, 2});
    const auto two = subdivide(seg, 2);
    const std::vector<Point> expected{{0, 1}, {0, 1.5}, {0, 2}};
    EXPECT_EQ(two.vertices(), expected);

    const auto poly = Curve::polyline({{0, 0}, {2, 1}, {3, -1}});
    const int ones[] = {1, 1};
    EXPECT_EQ(subdivide(poly, std::span<const int>(ones)).vertices(), poly.vertices());

    const auto arc = Curve::analytic([](double s) { return Point{std::cos(s), std::sin(s)}; }, "arc");
    const auto fine = subdivide(arc, 4);
    const auto pts = fine.vertices();
    ASSERT_EQ(pts.size(), 5u);
    for (const auto& p : pts) EXPECT_NEAR(p.norm(), 1.0, 1e-15);
    EXPECT_EQ(fine.start(), arc.start());
    EXPECT_EQ(fine.end(), arc.end());
    const int bad[] = {0};
    EXPECT_THROW(subdivide(seg, std::span<const int>(bad)), std::invalid_argument);
}

TEST(Curve, SubdivisionKeepsVerticesOnSegments) {
    const auto poly = Curve::polyline({{0, 0}, {4, 0}, {4, 3}});
    const int splits[] = {4, 3};
    const auto fine = subdivide(poly, std::span<const int>(splits));
    EXPECT_EQ(fine.vertices().size(), 8u);
    for (const auto& p : fine.vertices()) EXPECT_TRUE(p.y == 0.0 || p.x == 4.0);
}

TEST(Curve, CircleIsClosed) {
    const auto c = Curve::circle({1, 2}, 0.5);
    EXPECT_TRUE(c.closed());
    EXPECT_NEAR(c.total_turning(), kTwoPi, 1e-2);
    EXPECT_EQ(c.label(), "circle");
}

TEST(Curve, ReverseAndConcatenate) {
    const auto a = Curve::polyline({{0, 0}, {1, 0}});
    const auto b = Curve::polyline({{1, 0}, {1, 1}, {2, 1}});
    const auto ab = concatenate(a, b);
    EXPECT_EQ(ab.vertices().size(), 4u);
    EXPECT_EQ(ab.reversed().start(), (Point{2, 1}));
    EXPECT_THROW(concatenate(b, a), std::invalid_argument);

    const auto arc = Curve::analytic([](double s) { return Point{s, s * s}; }, "parabola");
    const auto mixed = concatenate(a.reversed(), Curve::analytic([](double s) { return Point{s, s * s}; }));
    EXPECT_EQ(mixed.at(0.0), (Point{1, 0}));
    EXPECT_EQ(mixed.at(1.0), (Point{1, 1}));
    EXPECT_EQ(arc.reversed().at(0.25), arc.at(0.75));
}
