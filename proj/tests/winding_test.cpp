#include <gtest/gtest.h>

#include <cmath>

#include "brouwer/models.hpp"
#include "brouwer/sampling.hpp"
#include "brouwer/winding.hpp"

using namespace brouwer;

namespace {

/// Independent oracle: n uniform samples, atan2 differences wrapped into (-pi, pi].
double dense_winding(const std::function<Vector(Point)>& f, const Curve& c, int n = 100000) {
    double total = 0.0;
    double prev = std::atan2(f(c.at(0)).dy, f(c.at(0)).dx);
    for (int i = 1; i <= n; ++i) {
        const Vector v = f(c.at(static_cast<double>(i) / n));
        const double a = std::atan2(v.dy, v.dx);
        double d = a - prev;
        while (d > kPi) d -= kTwoPi;
        while (d <= -kPi) d += kTwoPi;
        total += d;
        prev = a;
    }
    return total / kTwoPi;
}

const VectorField kConstant{[](Point) { return Vector{1, 0}; }, "constant", "analytic"};
const VectorField kRadial{[](Point p) { return Vector{p.x, p.y}; }, "radial", "analytic"};

}  // namespace

TEST(FieldWinding, ConstantFieldIsZero) {
    const auto r = field_winding(kConstant, Curve::polyline({{0, 0}, {3, 1}, {-2, 5}}));
    EXPECT_EQ(r.raw, 0.0);
    ASSERT_TRUE(r.snapped);
    EXPECT_EQ(*r.snapped, Rational(0));
    EXPECT_EQ(r.min_vector_magnitude, 1.0);
}

TEST(FieldWinding, ReebStripIsHalf) {
    const auto r = field_winding(reeb_field(), Curve::segment({0, 1}, {0, 2}));
    EXPECT_NEAR(r.raw, 0.5, 1e-12);
    EXPECT_EQ(*r.snapped, Rational(1, 2));
    EXPECT_NEAR(r.end_angle - r.start_angle, kPi, 1e-12);
}

TEST(FieldWinding, RadialAroundCircleIsOne) {
    const auto r = field_winding(kRadial, Curve::circle({0, 0}, 1.0));
    EXPECT_NEAR(r.raw, 1.0, 1e-12);
    EXPECT_EQ(*r.snapped, Rational(1));
}

TEST(FieldWinding, DirectionJumpExhaustsRefinement) {
    // half-angle field jumps by pi across the negative x-axis
    const VectorField jump{[](Point p) { return Vector{std::cos(std::atan2(p.y, p.x) / 2), std::sin(std::atan2(p.y, p.x) / 2)}; },
                           "half-angle", "discontinuous"};
    WindingOptions opts;
    opts.max_samples = 4096;
    EXPECT_THROW(field_winding(jump, Curve::circle({0, 0}, 1.0), opts), RefinementExhausted);
}

TEST(FieldWinding, ClosedCurvesSnapWithDenominatorOne) {
    // a square traversed once is closed, so a half-integer denominator is not used
    const auto square = Curve::polyline({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    WindingOptions opts;
    opts.snap_denominator = 2;
    const auto r = field_winding(kRadial, square, opts);
    ASSERT_TRUE(r.snapped);
    EXPECT_EQ(r.snapped->den(), 1);
    EXPECT_EQ(*r.snapped, Rational(1));
}

TEST(FieldWinding, FixedPointOnCurve) {
    try {
        field_winding(kRadial, Curve::segment({-1, 0}, {1, 0}));
        FAIL() << "expected FixedPointOnCurve";
    } catch (const FixedPointOnCurve& e) {
        EXPECT_NEAR(e.param, 0.5, 1e-12);
    }
}

TEST(FieldWinding, RejectsBadOptions) {
    WindingOptions o;
    o.initial_samples = 4;
    EXPECT_THROW(field_winding(kConstant, Curve::segment({0, 0}, {1, 0}), o), std::invalid_argument);
    o = {};
    o.snap_denominator = 0;
    EXPECT_THROW(field_winding(kConstant, Curve::segment({0, 0}, {1, 0}), o), std::invalid_argument);
}

TEST(FieldWinding, RefinementResolvesFastRotation) {
    // direction turns 40 full times along the unit segment; 16 initial samples must be refined
    const VectorField spin{[](Point p) { return Vector{std::cos(80 * kPi * p.x), std::sin(80 * kPi * p.x)}; }, "spin", "analytic"};
    WindingOptions opts;
    opts.initial_samples = 16;
    const auto r = field_winding(spin, Curve::segment({0, 0}, {1, 0}), opts);
    EXPECT_NEAR(r.raw, 40.0, 1e-9);
    EXPECT_GT(r.samples_used, 160u);
    EXPECT_GT(r.refinement_rounds, 0u);
}

TEST(HopfIndex, Examples) {
    EXPECT_EQ(hopf_index(kRadial, {0, 0}, 1.0), Rational(1));
    const VectorField square{[](Point p) { return Vector{p.x * p.x - p.y * p.y, 2 * p.x * p.y}; }, "z^2", "analytic"};
    EXPECT_EQ(hopf_index(square, {0, 0}, 1.0), Rational(2));
    const VectorField saddle{[](Point p) { return Vector{p.x, -p.y}; }, "saddle", "analytic"};
    EXPECT_EQ(hopf_index(saddle, {0, 0}, 1.0), Rational(-1));
}

TEST(HopfIndex, RadiusInvariance) {
    const VectorField square{[](Point p) { return Vector{p.x * p.x - p.y * p.y + 0.0, 2 * p.x * p.y}; }, "z^2", "analytic"};
    for (double r : {0.01, 0.3, 1.0, 7.5, 100.0}) EXPECT_EQ(hopf_index(square, {0, 0}, r), Rational(2));
    // circles that avoid the zero have index 0
    EXPECT_EQ(hopf_index(square, {3, 3}, 1.0), Rational(0));
}

TEST(DisplacementWinding, TranslationIsZero) {
    const auto r = displacement_winding(make_translation().map, Curve::segment({0, 1}, {0, 2}));
    EXPECT_EQ(r.raw, 0.0);
    EXPECT_EQ(*r.snapped, Rational(0));
}

TEST(DisplacementWinding, ReebMatchesDenseOracle) {
    const auto h = make_reeb_flow();
    const auto seg = Curve::segment({0, 1}, {0, 2});
    auto disp = [&](Point p) { return h.map(p) - p; };
    const double oracle = dense_winding(disp, seg);
    const auto r = displacement_winding(h.map, seg);
    EXPECT_NEAR(oracle, 0.5, 1e-9);
    EXPECT_NEAR(r.raw, oracle, 1e-9);
    EXPECT_EQ(*r.snapped, Rational(1, 2));
}

TEST(DisplacementWinding, BadCoordinatesExample) {
    const auto h = make_dehn_conjugate({0.5, 2.0}, 0.6, 0.9);
    const auto a = displacement_winding(h.map, Curve::segment({0, 1}, {0, 2}));
    const auto b = displacement_winding(h.map, Curve::segment({2, 1}, {2, 2}));
    EXPECT_EQ(*a.snapped, Rational(1));
    EXPECT_EQ(*b.snapped, Rational(0));
    auto disp = [&](Point p) { return h.map(p) - p; };
    EXPECT_NEAR(a.raw, dense_winding(disp, Curve::segment({0, 1}, {0, 2})), 1e-9);
}

TEST(DisplacementWinding, SnapFailureLeavesSnappedEmpty) {
    // endpoint (0, 1.5) is not on an orbit line, so the raw value is not a half-integer
    const auto r = displacement_winding(make_reeb_flow().map, Curve::segment({0, 1}, {0, 1.37}));
    EXPECT_FALSE(r.snapped);
    EXPECT_GT(r.raw, 0.02);
}

TEST(DisplacementWinding, AdditivityAndReversal) {
    const auto h = make_stack({reeb_strip(1), reeb_strip(1)});
    Rng rng(17);
    for (int k = 0; k < 20; ++k) {
        auto rp = [&] { return Point{rng.uniform(-4, 4), rng.uniform(0, 4)}; };
        const auto a = Curve::polyline({rp(), rp()});
        const auto b = Curve::polyline({a.end(), rp(), rp()});
        const double wa = displacement_winding(h.map, a).raw, wb = displacement_winding(h.map, b).raw;
        EXPECT_NEAR(displacement_winding(h.map, concatenate(a, b)).raw, wa + wb, 1e-9);
        EXPECT_NEAR(displacement_winding(h.map, b.reversed()).raw, -wb, 1e-9);
    }
}

TEST(DisplacementWinding, RefinementConvergence) {
    const auto h = make_pocket_flow();
    const auto c = h.connect(h.orbits[1].base, h.orbits[5].base);
    WindingOptions coarse, fine;
    fine.max_samples = 2 * coarse.max_samples;
    fine.initial_samples = 2 * coarse.initial_samples;
    EXPECT_NEAR(displacement_winding(h.map, c, coarse).raw, displacement_winding(h.map, c, fine).raw, 1e-6);
}
