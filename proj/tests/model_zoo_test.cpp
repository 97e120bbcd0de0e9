#include <gtest/gtest.h>

#include <cmath>

#include "brouwer/models.hpp"
#include "brouwer/registry.hpp"
#include "brouwer/sampling.hpp"
#include "brouwer/twist_group.hpp"

using namespace brouwer;

TEST(Translation, Examples) {
    const auto h = make_translation();
    EXPECT_EQ(h.map({0, 1}), (Point{1, 1}));
    EXPECT_EQ(h.map.inverse({0, 2}), (Point{-1, 2}));
    ASSERT_EQ(h.orbits.size(), 2u);
    EXPECT_EQ(h.orbits[0].base, (Point{0, 1}));
    EXPECT_EQ(h.orbits[1].base, (Point{0, 2}));
    EXPECT_TRUE(h.brouwer);
    EXPECT_EQ(h.class_hint, "T");
}

TEST(Twists, LineActions) {
    const auto [t1, t2] = make_twists();
    for (int n = -5; n <= 5; ++n) {
        EXPECT_EQ(t1.map({double(n), 1}), (Point{n + 1.0, 1}));
        EXPECT_EQ(t1.map({double(n), 2}), (Point{double(n), 2}));
        EXPECT_EQ(t2.map({double(n), 1}), (Point{double(n), 1}));
        EXPECT_EQ(t2.map({double(n), 2}), (Point{n + 1.0, 2}));
    }
    EXPECT_FALSE(t1.brouwer);
}

TEST(Twists, ProductIsTranslation) {
    const auto [t1, t2] = make_twists();
    const auto prod = compose({t1.map, t2.map});
    const auto t = make_translation().map;
    Rng rng(4);
    for (int k = 0; k < 50; ++k) {
        const Point p{rng.uniform(-10, 10), rng.uniform(-3, 5)};
        EXPECT_LT(distance(prod(p), t(p)), 1e-12);
    }
}

TEST(TwistGroup, ExactWords) {
    const TwistElement w = kT1 * kT2.inverse();
    EXPECT_EQ(w.line_action(), (std::pair<long, long>{1, -1}));
    for (long n = -5; n <= 5; ++n) {
        EXPECT_EQ(w.apply({Rational(n), Rational(1)}), (RationalPoint{Rational(n + 1), Rational(1)}));
        EXPECT_EQ(w.apply({Rational(n), Rational(2)}), (RationalPoint{Rational(n - 1), Rational(2)}));
    }
    // T1 T2 = T exactly, on rational points off the orbit lines too
    const RationalPoint p{Rational(3, 7), Rational(5, 3)};
    EXPECT_EQ((kT1 * kT2).apply(p), translate_exact(p));
    EXPECT_TRUE((kT1 * kT1.inverse()).identity());
    EXPECT_EQ(kT1 * kT2, kT2 * kT1);
}

TEST(Reeb, ContinuousAcrossBoundaries) {
    const auto f = reeb_field();
    for (double x : {-2.0, 0.0, 3.0}) {
        EXPECT_EQ(f({x, 1.0}).dx, 1.0);
        EXPECT_EQ(f({x, 2.0}).dx, -1.0);
        EXPECT_NEAR(distance(Point{0, 0} + f({x, 1.0 + 1e-9}), Point{0, 0} + f({x, 1.0})), 0.0, 1e-8);
        EXPECT_NEAR(distance(Point{0, 0} + f({x, 2.0 - 1e-9}), Point{0, 0} + f({x, 2.0})), 0.0, 1e-8);
    }
    EXPECT_NEAR(f({0, 1.5}).dx, 0.0, 1e-15);
    EXPECT_EQ(f({0, 1.5}).dy, 1.0);
}

TEST(Stack, Examples) {
    const auto same = make_stack({reeb_strip(1), reeb_strip(1)});
    ASSERT_EQ(same.orbits.size(), 3u);
    EXPECT_EQ(same.id, "stack:R+,R+");
    EXPECT_NEAR(same.map({0, 1}).x, 1.0, 1e-10);
    EXPECT_NEAR(same.map({0, 2}).x, -1.0, 1e-10);
    EXPECT_NEAR(same.map({0, 3}).x, 1.0, 1e-10);
    const auto mixed = make_stack({reeb_strip(1), reeb_strip(-1)});
    EXPECT_EQ(mixed.id, "stack:R+,R-");
    // vertical speed is the turn sign times the strip's bottom direction
    EXPECT_NEAR(same.field->eval({0, 2.5}).dy, -1.0, 1e-15);
    EXPECT_NEAR(mixed.field->eval({0, 2.5}).dy, 1.0, 1e-15);
}

TEST(Stack, BoundaryLinesInvariantExactly) {
    const auto h = make_stack({reeb_strip(1), translation_strip(-1), reeb_strip(-1)});
    for (const auto& o : h.orbits) {
        for (int k = 0; k < 100; ++k) {
            const Point p{-10.0 + 0.2 * k, o.base.y};
            EXPECT_EQ(h.map(p).y, o.base.y);
        }
    }
}

TEST(Stack, InconsistentDirections) {
    try {
        make_stack({reeb_strip(1), translation_strip(1)});
        FAIL() << "expected InconsistentBoundaryDirections";
    } catch (const InconsistentBoundaryDirections& e) {
        EXPECT_EQ(e.line, 2u);
    }
    EXPECT_THROW(make_stack({}), std::invalid_argument);
}

TEST(Parallel, LineDirections) {
    for (const std::vector<int>& dirs : {std::vector<int>{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1}}) {
        const auto h = make_parallel_flow(dirs);
        ASSERT_EQ(h.orbits.size(), dirs.size());
        for (std::size_t k = 0; k < dirs.size(); ++k) {
            const Point p = h.orbits[k].base;
            const Point q = h.map(p);
            EXPECT_EQ(q.y, p.y) << h.id;
            EXPECT_NEAR(q.x - p.x, dirs[k], 1e-9) << h.id << " line " << k;
        }
    }
}

TEST(Dehn, FixedPointsAndMidAnnulus) {
    const auto phi = make_dehn_twist().map;
    for (Point p : {Point{0, 2}, Point{1, 2}, Point{5, 7}, Point{-1, 2}}) EXPECT_EQ(phi(p), p);
    // radius 0.75 is halfway through the annulus: rotation by pi
    const Point q = phi({0.5 + 0.75, 2});
    EXPECT_NEAR(q.x, 0.5 - 0.75, 1e-12);
    EXPECT_NEAR(q.y, 2.0, 1e-12);
    Rng rng(9);
    for (int k = 0; k < 50; ++k) {
        const Point p{rng.uniform(-1, 2), rng.uniform(0.5, 3.5)};
        EXPECT_LT(distance(phi.inverse(phi(p)), p), 1e-12);
    }
    EXPECT_THROW(dehn_twist_map({0, 0}, 1.0, 0.5), std::invalid_argument);
}

TEST(Dehn, ConjugateKeepsOrbitLines) {
    const auto h = make_dehn_conjugate();
    for (int n = -5; n <= 5; ++n) {
        EXPECT_LT(distance(h.map({double(n), 1}), {n + 1.0, 1}), 1e-12);
        EXPECT_LT(distance(h.map({double(n), 2}), {n + 1.0, 2}), 1e-12);
    }
    EXPECT_EQ(h.id, "dehn:0.5,2,0.6,0.9");
}

TEST(Psi0, SwapsOrbitsReversingOrder) {
    const auto psi = psi0_change().map();
    for (int n = -5; n <= 5; ++n) {
        EXPECT_LT(distance(psi({double(n), 1}), {-double(n), 1}), 1e-12);
        EXPECT_LT(distance(psi({double(n), 2}), {-double(n), 2}), 1e-12);
    }
}

TEST(Psi0, ConjugatesTranslationToInverse) {
    const auto psi = psi0_change().map();
    const auto t = make_translation();
    const auto conj = conjugate(t, psi);
    Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        const Point p{rng.uniform(-6, 6), rng.uniform(-1, 4)};
        EXPECT_LT(distance(conj.map(p), t.map.inverse(p)), 1e-9) << p.x << "," << p.y;
        EXPECT_GT(jacobian_sign(psi, p), 0.0);
    }
}

TEST(Pocket, LeavesAndLines) {
    const auto h = make_pocket_flow();
    ASSERT_EQ(h.orbits.size(), 13u);
    for (std::size_t k = 0; k < 13; ++k) {
        const Point p = h.orbits[k].base;
        EXPECT_NEAR(p.y, k * kPi / 2, 1e-15);
        const auto v = h.field->eval(p);
        if (k % 2 == 0) {
            EXPECT_NEAR(v.dy, 0.0, 1e-15);
            EXPECT_EQ(v.dx > 0, (k / 2) % 2 == 0) << k;
            EXPECT_NEAR(h.map(p).y, p.y, 1e-12);
        } else {
            // leftmost point of a U-leaf: motion is vertical
            EXPECT_NEAR(v.dx, 0.0, 1e-12);
            const double H = pocket_hamiltonian(p);
            EXPECT_NEAR(std::abs(H), 1.0, 1e-12);
            const auto& poly = h.orbits[k].streamline->polyline;
            for (std::size_t i = 0; i < poly.size(); i += 50) EXPECT_NEAR(pocket_hamiltonian(poly[i]), H, 1e-6 * std::exp(poly[i].x));
            // both ends escape to the right
            EXPECT_GT(poly.front().x, 25.0);
            EXPECT_GT(poly.back().x, 25.0);
        }
    }
}

TEST(Conjugate, Examples) {
    const auto t = make_translation();
    const auto shifted = conjugate(t, translation_map(0, 5));
    EXPECT_EQ(shifted.orbits[0].base, (Point{0, 6}));
    EXPECT_EQ(shifted.map({2, 6}), (Point{3, 6}));
    EXPECT_THROW(conjugate(t, translation_map(0, 5), translation_map(0, -4)), NotInverse);
}

TEST(Registry, ParsesAllExampleIds) {
    for (const auto& id : example_model_ids()) {
        const auto h = make_model(id);
        EXPECT_FALSE(h.orbits.empty()) << id;
    }
    EXPECT_EQ(make_model("stack:R+,T-").orbits.size(), 3u);
    EXPECT_EQ(make_model("parallel:+,-,+").id, "parallel:+,-,+");
}

TEST(Registry, Errors) {
    EXPECT_THROW(make_model("torus"), ModelNotFound);
    EXPECT_THROW(make_model("cone:1"), ModelNotFound);
    EXPECT_THROW(make_model("stack:Q+"), SpecParseError);
    EXPECT_THROW(make_model("stack:R*"), SpecParseError);
    EXPECT_THROW(make_model("parallel:+"), SpecParseError);
    EXPECT_THROW(make_model("dehn:0,0,1"), SpecParseError);
    EXPECT_THROW(make_model("dehn:0,0,1,0.5"), SpecParseError);
    EXPECT_THROW(make_model("dehn:a,0,0.5,1"), SpecParseError);
}

TEST(Registry, Deterministic) {
    const auto a = make_model("pocket"), b = make_model("pocket");
    for (std::size_t k = 0; k < a.orbits.size(); ++k) {
        EXPECT_EQ(a.orbits[k].streamline->polyline, b.orbits[k].streamline->polyline);
        EXPECT_EQ(a.map(a.orbits[k].base), b.map(b.orbits[k].base));
    }
}
