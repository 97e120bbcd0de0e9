#include <gtest/gtest.h>

#include <cmath>

#include "brouwer/flows.hpp"
#include "brouwer/models.hpp"
#include "brouwer/sampling.hpp"

using namespace brouwer;

namespace {

const VectorField kConstant{[](Point) { return Vector{1, 0}; }, "constant", "analytic"};
// rigid rotation: closed form p -> Rot(t) p
const VectorField kRotation{[](Point p) { return Vector{-p.y, p.x}; }, "rotation", "analytic"};

}  // namespace

TEST(Integrate, Examples) {
    const Point a = integrate(kConstant, {0, 0}, 1.0);
    EXPECT_NEAR(a.x, 1.0, 1e-12);
    EXPECT_NEAR(a.y, 0.0, 1e-12);
    const Point b = integrate(reeb_field(), {0, 1}, 1.0);
    EXPECT_NEAR(b.x, 1.0, 1e-10);
    EXPECT_EQ(b.y, 1.0);
    const Point c = integrate(pocket_field(), {0, kPi / 2}, 1.0);
    EXPECT_LT(std::abs(pocket_hamiltonian(c) - 1.0), 1e-8);
}

TEST(Integrate, RotationAgainstClosedForm) {
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const Point p{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const double t = rng.uniform(-4, 4);
        const Point q = integrate(kRotation, p, t);
        EXPECT_NEAR(q.x, std::cos(t) * p.x - std::sin(t) * p.y, 1e-8);
        EXPECT_NEAR(q.y, std::sin(t) * p.x + std::cos(t) * p.y, 1e-8);
    }
}

TEST(Integrate, ZeroTimeIsIdentity) { EXPECT_EQ(integrate(kRotation, {1.5, -2}, 0.0), (Point{1.5, -2})); }

TEST(Integrate, Errors) {
    IntegratorSettings tight;
    tight.max_steps = 3;
    EXPECT_THROW(integrate(kConstant, {0, 0}, 10.0, tight), StepLimitExceeded);
    const VectorField blowup{[](Point p) { return Vector{p.x * p.x, 0}; }, "blowup", "analytic"};
    EXPECT_THROW(integrate(blowup, {1, 0}, 2.0), Error);
}

TEST(TimeOneMap, Examples) {
    const auto t = time_one_map(kConstant);
    for (double x : {-3.0, 0.0, 2.5}) EXPECT_NEAR(t({x, 7}).x, x + 1, 1e-10);
    EXPECT_TRUE(t.orientation_preserving);
    const auto r = time_one_map(reeb_field());
    const Point q = r({0, 2});
    EXPECT_NEAR(q.x, -1.0, 1e-10);
    EXPECT_EQ(q.y, 2.0);
    EXPECT_NEAR(distance(r.inverse(r({0.3, 1.4})), {0.3, 1.4}), 0.0, 1e-9);
}

TEST(TimeOneMap, PocketFlowFixedPointFree) {
    const auto h = time_one_map(pocket_field());
    const auto audit = displacement_audit(h, {-5, 20, -1, 17}, 100, 100, 1e-3);
    EXPECT_TRUE(audit.pass) << audit.minimum;
}

TEST(Compose, RightToLeft) {
    const PlanarMap a{[](Point p) { return Point{p.x + 1, p.y}; }, [](Point p) { return Point{p.x - 1, p.y}; }, "a", true};
    const PlanarMap b{[](Point p) { return Point{2 * p.x, p.y}; }, [](Point p) { return Point{p.x / 2, p.y}; }, "b", true};
    EXPECT_EQ(compose({a, b})({1, 0}), (Point{3, 0}));
    EXPECT_EQ(compose({b, a})({1, 0}), (Point{4, 0}));
    EXPECT_EQ(compose({a, b}).inverse({3, 0}), (Point{1, 0}));
    EXPECT_EQ(compose({})({5, 6}), (Point{5, 6}));
}

TEST(Orbit, TranslationIterates) {
    Orbit o(make_translation().map, {0, 1}, 3);
    for (long n = -3; n <= 3; ++n) EXPECT_EQ(o.cached(n), (Point{static_cast<double>(n), 1}));
    EXPECT_EQ(o.depth(), 3u);
}

TEST(Orbit, ReebTopLine) {
    Orbit o(make_reeb_flow().map, {0, 2}, 2);
    for (long n = -2; n <= 2; ++n) {
        EXPECT_NEAR(o.cached(n).x, -static_cast<double>(n), 1e-9);
        EXPECT_EQ(o.cached(n).y, 2.0);
    }
}

TEST(Orbit, PocketLeafInvariance) {
    const auto h = make_pocket_flow();
    Orbit o(h.map, {0, kPi / 2}, 5);
    for (long n = -5; n <= 5; ++n) EXPECT_LT(std::abs(pocket_hamiltonian(o.cached(n)) - 1.0), 1e-6);
}

TEST(Orbit, ConsistencyInvariant) {
    const auto h = make_reeb_flow();
    Orbit o(h.map, {0.2, 1.3}, 10);
    for (long n = -10; n < 10; ++n) EXPECT_LT(distance(h.map(o.cached(n)), o.cached(n + 1)), 1e-8);
    EXPECT_THROW((void)o.cached(11), std::out_of_range);
    (void)o.iterate(15);
    EXPECT_EQ(o.forward_depth(), 15u);
}

TEST(Properness, TranslationPasses) {
    Orbit o(make_translation().map, {0, 1});
    EXPECT_TRUE(properness_probe(o).pass);
}

TEST(Properness, RotationFails) {
    const PlanarMap rot{[](Point p) { return Point{std::cos(1.0) * p.x - std::sin(1.0) * p.y, std::sin(1.0) * p.x + std::cos(1.0) * p.y}; },
                        [](Point p) { return Point{std::cos(1.0) * p.x + std::sin(1.0) * p.y, -std::sin(1.0) * p.x + std::cos(1.0) * p.y}; },
                        "rotation", true};
    Orbit o(rot, {1, 0});
    const auto r = properness_probe(o);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.forward.witness.empty());
}

TEST(Properness, PocketLeafPasses) {
    const auto h = make_pocket_flow();
    Orbit o(h.map, {0, kPi / 2}, 40);
    const auto r = properness_probe(o);
    EXPECT_TRUE(r.pass) << r.forward.witness << " / " << r.backward.witness;
}

TEST(Properness, ReturningOrbitFails) {
    // goes out to 50 and comes back to the origin region
    const PlanarMap bounce{[](Point p) { return Point{p.x < 60 ? p.x + 5 : 0.0, p.y}; }, nullptr, "bounce", true};
    Orbit o(bounce, {0, 0}, 0);
    const auto r = properness_probe(o, {10, 20, 40, 80}, 400);
    EXPECT_FALSE(r.forward.pass);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.backward.witness, "map has no inverse");
}

TEST(Audits, NonvanishingExamples) {
    const auto a = nonvanishing_audit(kConstant, {-2, 2, -2, 2}, 5, 5, 0.5);
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.minimum, 1.0);
    const VectorField radial{[](Point p) { return Vector{p.x, p.y}; }, "radial", "analytic"};
    const auto b = nonvanishing_audit(radial, {-1, 1, -1, 1}, 11, 11, 1e-3);
    EXPECT_FALSE(b.pass);
    EXPECT_NEAR(b.location.x, 0.0, 1e-12);
    EXPECT_NEAR(b.location.y, 0.0, 1e-12);
    const auto c = nonvanishing_audit(reeb_field(), {-3, 3, 0, 3}, 31, 31, 0.5);
    EXPECT_TRUE(c.pass);
    EXPECT_NEAR(c.minimum, 1.0, 1e-15);
    EXPECT_THROW(nonvanishing_audit(kConstant, {0, 1, 0, 1}, 1, 5, 0.1), std::invalid_argument);
}

TEST(FlowLaw, ModelFields) {
    Rng rng(8);
    const VectorField fields[] = {reeb_field(), pocket_field(), *make_stack({reeb_strip(1), reeb_strip(-1)}).field};
    for (const auto& f : fields) {
        for (int k = 0; k < 100; ++k) {
            const Point p{rng.uniform(-5, 5), rng.uniform(0, 4)};
            EXPECT_LT(distance(integrate(f, integrate(f, p, 0.5), 0.5), integrate(f, p, 1.0)), 1e-7) << f.name;
            const double t = rng.uniform(-2, 2);
            EXPECT_LT(distance(integrate(f, integrate(f, p, t), -t), p), 1e-7) << f.name;
        }
    }
}
