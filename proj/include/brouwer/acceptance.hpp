#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "brouwer/config.hpp"
#include "brouwer/models.hpp"
#include "brouwer/orbit_index.hpp"
#include "brouwer/registry.hpp"
#include "brouwer/sampling.hpp"
#include "brouwer/twist_group.hpp"
#include "brouwer/winding.hpp"

namespace brouwer::acceptance {

struct Settings {
    WindingOptions winding{};
    std::uint64_t seed = 20240601;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

namespace detail {

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

inline const Curve& unit_segment() {
    static const Curve c = Curve::segment({0.0, 1.0}, {0.0, 2.0});
    return c;
}

/// Appends "what" to detail and clears pass when cond fails.
struct Checker {
    bool pass = true;
    std::string detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

}  // namespace detail

// 1. Translation baseline
inline detail::Checker translation_baseline(const Settings& s) {
    detail::Checker c;
    const auto t = make_translation();
    const auto r = pair_index(t.map, {0, 1}, {0, 2}, std::nullopt, s.winding);
    c.check(r.value == Rational(0), "value " + r.value.str());
    c.check(std::abs(r.winding.raw) < 1e-6, "raw " + detail::fmt("%.3g", r.winding.raw));
    c.note("I = " + r.value.str() + ", raw " + detail::fmt("%.3g", r.winding.raw));
    return c;
}

// 2. Reeb index, raw value and curve independence
inline detail::Checker reeb_index(const Settings& s) {
    detail::Checker c;
    const auto h = make_reeb_flow();
    const auto r = pair_index(h.map, {0, 1}, {0, 2}, std::nullopt, s.winding);
    c.check(r.value == Rational(1, 2), "value " + r.value.str());
    c.check(std::abs(r.winding.raw - 0.5) < 1e-3, "raw " + detail::fmt("%.6f", r.winding.raw));
    const auto audit = curve_independence_audit(h.map, {0, 1}, {0, 2}, 20, s.seed, h.window, 3, s.winding);
    std::size_t halves = 0;
    for (const auto& rec : audit.cases) {
        if (rec.value && *rec.value == Rational(1, 2)) ++halves;
        if (!rec.error.empty()) c.check(false, rec.error);
    }
    c.check(audit.pass && halves == 20, std::to_string(halves) + "/20 random curves give 1/2");
    c.note("I = " + r.value.str() + ", raw " + detail::fmt("%.9f", r.winding.raw) + ", " + std::to_string(halves) +
           "/20 curves agree");
    return c;
}

// 3. Bad coordinates
inline detail::Checker bad_coordinates(const Settings& s) {
    detail::Checker c;
    const auto h = make_dehn_conjugate({0.5, 2.0}, 0.6, 0.9);
    const auto a = curve_index(h.map, Curve::segment({0, 1}, {0, 2}), s.winding);
    const auto b = curve_index(h.map, Curve::segment({2, 1}, {2, 2}), s.winding);
    c.check(a.value == Rational(1), "x=0 gives " + a.value.str());
    c.check(b.value == Rational(0), "x=2 gives " + b.value.str());
    c.note("x=0: " + a.value.str() + ", x=2: " + b.value.str());
    return c;
}

// 4. Reeb component counting
inline detail::Checker reeb_counting(const Settings& s) {
    detail::Checker c;
    struct Case {
        std::vector<StripDescriptor> strips;
        double top;
        Rational expected;
    };
    const std::vector<Case> cases{{{reeb_strip(1)}, 2.0, Rational(1, 2)},
                                  {{reeb_strip(1), reeb_strip(1)}, 3.0, Rational(1)},
                                  {{reeb_strip(1), reeb_strip(-1)}, 3.0, Rational(0)}};
    for (const auto& k : cases) {
        const auto h = make_stack(k.strips);
        const auto r = pair_index(h.map, {0, 1}, {0, k.top}, std::nullopt, s.winding);
        c.check(r.value == k.expected, h.id + " gives " + r.value.str());
        c.note(h.id + " -> " + r.value.str());
    }
    return c;
}

/// Triples used by the quasi-additivity criterion: (model, orbit ids).
inline std::vector<std::pair<std::string, std::array<std::size_t, 3>>> quasi_additivity_triples() {
    std::vector<std::pair<std::string, std::array<std::size_t, 3>>> out;
    for (const char* id : {"parallel:+,+,+", "parallel:+,+,-", "parallel:+,-,+", "parallel:-,+,+", "parallel:-,-,+",
                           "parallel:+,-,-", "parallel:-,+,-", "parallel:-,-,-"})
        out.push_back({id, {0, 1, 2}});
    for (const char* id : {"parallel:+,-,+,-", "parallel:+,+,-,-", "stack:R+,R+,R+", "stack:R+,R-,R+", "stack:R+,T-,R-"}) {
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b)
                for (std::size_t d = b + 1; d < 4; ++d) out.push_back({id, {a, b, d}});
    }
    // pocket: every triple of declared orbits, plus a few in reversed order
    for (std::size_t a = 0; a < 13; ++a)
        for (std::size_t b = a + 1; b < 13; ++b)
            for (std::size_t d = b + 1; d < 13; ++d) out.push_back({"pocket", {a, b, d}});
    out.push_back({"pocket", {9, 5, 1}});
    out.push_back({"pocket", {5, 3, 1}});
    out.push_back({"pocket", {4, 1, 0}});
    return out;
}

// 5. Quasi-additivity
inline detail::Checker quasi_additivity(const Settings& s) {
    detail::Checker c;
    std::size_t total = 0, separating = 0, nonseparating = 0;
    std::string current;
    ModelHandle h;
    for (const auto& [id, t] : quasi_additivity_triples()) {
        if (id != current) {
            h = make_model(id);
            current = id;
        }
        const std::string tag = id + "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
        try {
            const auto r = triple_sum(h, t[0], t[1], t[2], s.winding);
            const auto v = triple_verdict(config_from_model(h, {t[0], t[1], t[2]}));
            ++total;
            c.check(abs(r.sum) <= Rational(1, 2), tag + " sum " + r.sum.str());
            if (v.kind == TripleVerdict::Kind::Separating) {
                ++separating;
                c.check(r.sum == Rational(0), tag + " separating but sum " + r.sum.str());
            } else {
                ++nonseparating;
                c.check(r.sum == Rational(v.sign, 2), tag + " predicted " + predicted_triple_sum(v).str() + " got " + r.sum.str());
            }
        } catch (const Error& e) {
            c.check(false, tag + ": " + e.what());
        }
    }
    c.check(total >= 50, "only " + std::to_string(total) + " triples");
    c.note(std::to_string(total) + " triples, " + std::to_string(separating) + " separating, " +
           std::to_string(nonseparating) + " non-separating");
    return c;
}

// 6. Conjugacy invariance
inline detail::Checker conjugacy_invariance(const Settings& s) {
    detail::Checker c;
    const auto catalog = standard_change_catalog();
    const std::pair<const char*, ModelHandle> models[] = {{"T", make_translation()}, {"R", make_reeb_flow()}};
    const Rational expected[] = {Rational(0), Rational(1, 2)};
    for (std::size_t m = 0; m < 2; ++m) {
        const auto rep = conjugacy_invariance_audit(models[m].second.map, detail::unit_segment(), catalog, s.winding);
        c.check(rep.reference == expected[m], std::string(models[m].first) + " reference " + rep.reference.str());
        for (const auto& k : rep.cases) {
            const bool ok = k.error.empty() && k.value && *k.value == expected[m];
            c.check(ok, std::string(models[m].first) + " under " + k.change + ": " +
                            (k.value ? k.value->str() : std::string("-")) + " " + k.error);
        }
    }
    c.note(std::to_string(catalog.size()) + " changes of coordinates for T and R");
    return c;
}

// 7. Same-orbit vanishing
inline detail::Checker same_orbit_vanishing(const Settings& s) {
    detail::Checker c;
    Rng rng(s.seed ^ 0x5eed);
    const std::pair<const char*, ModelHandle> models[] = {{"T", make_translation()}, {"dehn", make_dehn_conjugate()}};
    for (const auto& [name, h] : models) {
        Orbit o(h.map, {0.0, 1.0}, 0);
        for (int k = 0; k < 10; ++k) {
            long n0 = rng.integer(-10, 10), n1 = rng.integer(-10, 10);
            if (n1 == n0) n1 = n0 + 1;
            const Point a = o.iterate(n0), b = o.iterate(n1);
            const Point mid{0.5 * (a.x + b.x) + rng.uniform(-0.5, 0.5), 1.0 - rng.uniform(0.0, 1.0)};
            const auto v = same_orbit_index(h.map, o, n0, n1, Curve::polyline({a, mid, b}), s.winding);
            c.check(v == Rational(0), std::string(name) + " iterates " + std::to_string(n0) + "," + std::to_string(n1) +
                                          " give " + v.str());
        }
    }
    c.note("10 iterate pairs each for T and the Dehn-conjugated T");
    return c;
}

// 8. Square boundary
inline detail::Checker square_boundary(const Settings& s) {
    detail::Checker c;
    const auto t = make_translation();
    const auto r = make_reeb_flow();
    const auto a = square_boundary_audit(t.map, [](double u) { return rotation_map({0, 0}, u * kPi / 6); },
                                         detail::unit_segment(), s.winding);
    const auto b = square_boundary_audit(r.map, [](double u) { return shear_map(u); }, detail::unit_segment(), s.winding);
    const auto d = square_boundary_audit(r.map, [](double) { return identity_map(); }, detail::unit_segment(), s.winding);
    c.check(a.pass, "T under rotation: raw " + detail::fmt("%.3g", a.raw));
    c.check(b.pass, "R under shear: raw " + detail::fmt("%.3g", b.raw));
    c.check(d.pass, "R under identity: raw " + detail::fmt("%.3g", d.raw));
    c.note("raw " + detail::fmt("%.2g", a.raw) + ", " + detail::fmt("%.2g", b.raw) + ", " + detail::fmt("%.2g", d.raw));
    return c;
}

// 9. Exact algebra
inline detail::Checker exact_algebra(const Settings& s) {
    detail::Checker c;
    Rng rng(s.seed ^ 0xa19e);
    for (int k = 0; k < 50; ++k) {
        const RationalPoint p{Rational(rng.integer(-1000, 1000), rng.integer(1, 97)),
                              Rational(rng.integer(-1000, 1000), rng.integer(1, 97))};
        const auto q = kT1.apply(kT2.apply(p));
        c.check(q == translate_exact(p), "T1 T2 != T at a sample");
    }
    // T1 T2^-1 shifts y = 1 by +1 and y = 2 by -1
    const auto m = kT1 * kT2.inverse();
    c.check(m.apply({Rational(0), Rational(1)}).x == Rational(1) && m.apply({Rational(0), Rational(2)}).x == Rational(-1),
            "T1 T2^-1 line action");
    std::size_t pairs = 0;
    for (long a1 = -5; a1 <= 5; ++a1)
        for (long a2 = -5; a2 <= 5; ++a2) {
            const TwistElement a{a1, a2};
            const auto on1 = a.apply({Rational(0), Rational(1)}).x, on2 = a.apply({Rational(0), Rational(2)}).x;
            c.check((on1 == Rational(0) && on2 == Rational(0)) == a.identity(), "relation at " + a.str());
            for (long b1 = -5; b1 <= 5; ++b1)
                for (long b2 = -5; b2 <= 5; ++b2) {
                    const TwistElement b{b1, b2};
                    const RationalPoint p{Rational(a1 - b2, 3), Rational(b1 + 7, 5)};
                    const bool ok = a * b == b * a && (a * b).apply(p) == a.apply(b.apply(p)) &&
                                    b.apply(a.apply(p)) == a.apply(b.apply(p));
                    c.check(ok, "composition " + a.str() + " with " + b.str());
                    ++pairs;
                }
        }
    const auto classes = two_orbit_conjugacy_classes();
    c.check(classes.size() == 3 && conjugate_classes(TwoOrbitClass::T, TwoOrbitClass::TInverse) &&
                !conjugate_classes(TwoOrbitClass::R, TwoOrbitClass::RInverse) &&
                !conjugate_classes(TwoOrbitClass::T, TwoOrbitClass::R),
            "conjugacy classes");
    c.note("50 exact points, " + std::to_string(pairs) + " element pairs, classes {T=T^-1}, {R}, {R^-1}");
    return c;
}

// 10. Classification
inline detail::Checker classification(const Settings&) {
    detail::Checker c;
    const auto t2 = classify_two_orbit(config_from_model(make_translation(), {0, 1}));
    const auto r2 = classify_two_orbit(config_from_model(make_reeb_flow(), {0, 1}));
    c.check(t2 == TwoOrbitClass::T, "translation classified " + to_string(t2));
    c.check(r2 == TwoOrbitClass::R, "Reeb classified " + to_string(r2));
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> five{
        {"parallel:+,+,+", {0, 1, 2}}, {"parallel:+,+,-", {0, 1, 2}}, {"parallel:+,-,+", {0, 1, 2}},
        {"pocket", {1, 5, 9}}, {"pocket", {1, 3, 5}}};
    std::set<ThreeOrbitClass> labels;
    std::string listing;
    for (std::size_t k = 0; k < five.size(); ++k) {
        const auto label = classify_three_orbit(config_from_model(make_model(five[k].first), five[k].second));
        labels.insert(label);
        listing += (k ? ", " : "") + to_string(label);
        if (five[k].first == "pocket")
            c.check(label == ThreeOrbitClass::NonSeparatingCoherent || label == ThreeOrbitClass::NonSeparatingMixed,
                    "pocket selection labelled " + to_string(label));
    }
    c.check(labels.size() == 5, "only " + std::to_string(labels.size()) + " distinct labels");
    c.note("T, R; " + listing);
    return c;
}

// 11. Property suites
inline detail::Checker property_suites(const Settings& s) {
    detail::Checker c;
    Rng rng(s.seed ^ 0x9e0);
    const auto reeb = make_reeb_flow();
    const auto pocket = make_pocket_flow();
    auto disp = [&](Point p) { return reeb.map(p) - p; };
    double worst_add = 0, worst_rev = 0, worst_ref = 0;
    for (int k = 0; k < 10; ++k) {
        auto rp = [&] { return Point{rng.uniform(-3, 3), rng.uniform(0, 3)}; };
        const auto a = Curve::polyline({rp(), rp(), rp()});
        const auto b = Curve::polyline({a.end(), rp(), rp()});
        const double wa = winding_along(disp, a, s.winding).raw, wb = winding_along(disp, b, s.winding).raw;
        const double wab = winding_along(disp, concatenate(a, b), s.winding).raw;
        const double wr = winding_along(disp, a.reversed(), s.winding).raw;
        worst_add = std::max(worst_add, std::abs(wab - wa - wb));
        worst_rev = std::max(worst_rev, std::abs(wr + wa));
        WindingOptions doubled = s.winding;
        doubled.initial_samples *= 2;
        worst_ref = std::max(worst_ref, std::abs(winding_along(disp, a, doubled).raw - wa));
    }
    c.check(worst_add < 1e-9, "concatenation additivity error " + detail::fmt("%.3g", worst_add));
    c.check(worst_rev < 1e-9, "reversal antisymmetry error " + detail::fmt("%.3g", worst_rev));
    c.check(worst_ref < 1e-6, "refinement change " + detail::fmt("%.3g", worst_ref));

    double worst_flow = 0, worst_back = 0, worst_h = 0;
    for (int k = 0; k < 50; ++k) {
        const Point p{rng.uniform(-2, 4), rng.uniform(0, 16)};
        const double t1 = rng.uniform(0, 1), t2 = rng.uniform(0, 1);
        const auto& f = *pocket.field;
        const Point a = integrate(f, integrate(f, p, t1), t2), b = integrate(f, p, t1 + t2);
        worst_flow = std::max(worst_flow, distance(a, b));
        worst_back = std::max(worst_back, distance(integrate(f, integrate(f, p, t1), -t1), p));
        worst_h = std::max(worst_h, std::abs(pocket_hamiltonian(integrate(f, p, t1)) - pocket_hamiltonian(p)));
        const Point q{rng.uniform(-5, 5), rng.uniform(0, 3)};
        worst_flow = std::max(worst_flow, distance(integrate(*reeb.field, integrate(*reeb.field, q, t1), t2),
                                                   integrate(*reeb.field, q, t1 + t2)));
        worst_back = std::max(worst_back, distance(reeb.map.inverse(reeb.map(q)), q));
    }
    c.check(worst_flow < 1e-7, "flow law error " + detail::fmt("%.3g", worst_flow));
    c.check(worst_back < 1e-7, "reversibility error " + detail::fmt("%.3g", worst_back));
    c.check(worst_h < 1e-8, "Hamiltonian drift " + detail::fmt("%.3g", worst_h));

    const VectorField source{[](Point p) { return Vector{p.x, p.y}; }, "source", "analytic"};
    const VectorField dipole{[](Point p) { return Vector{p.x * p.x - p.y * p.y, 2 * p.x * p.y}; }, "z^2", "analytic"};
    const VectorField saddle{[](Point p) { return Vector{p.x, -p.y}; }, "saddle", "analytic"};
    WindingOptions closed = s.winding;
    const auto i1 = hopf_index(source, {0, 0}, 1.0, closed), i2 = hopf_index(dipole, {0, 0}, 1.0, closed),
               i3 = hopf_index(saddle, {0, 0}, 1.0, closed);
    c.check(i1 == Rational(1) && i2 == Rational(2) && i3 == Rational(-1),
            "Poincare-Hopf " + i1.str() + ", " + i2.str() + ", " + i3.str());
    c.note("additivity " + detail::fmt("%.1g", worst_add) + ", flow law " + detail::fmt("%.1g", worst_flow) +
           ", H drift " + detail::fmt("%.1g", worst_h) + ", indices " + i1.str() + " " + i2.str() + " " + i3.str());
    return c;
}

struct CriterionSpec {
    int id;
    const char* name;
    double budget_seconds;
    std::function<detail::Checker(const Settings&)> run;
};

inline std::vector<CriterionSpec> criteria() {
    return {
        {1, "translation baseline", 1.0, translation_baseline},
        {2, "Reeb index 1/2 over 20 random curves", 10.0, reeb_index},
        {3, "bad coordinates: Dehn-conjugated T gives 1 and 0", 5.0, bad_coordinates},
        {4, "Reeb component counting", 15.0, reeb_counting},
        {5, "quasi-additivity of triple sums", 300.0, quasi_additivity},
        {6, "conjugacy invariance over the coordinate catalog", 60.0, conjugacy_invariance},
        {7, "same-orbit vanishing", 60.0, same_orbit_vanishing},
        {8, "square-boundary audit", 60.0, square_boundary},
        {9, "exact twist algebra and conjugacy classes", 60.0, exact_algebra},
        {10, "two- and three-orbit classification", 60.0, classification},
        {11, "property suites", 60.0, property_suites},
    };
}

inline bool in_quick_suite(int id) { return id <= 3 || id == 9 || id == 10; }

inline CriterionResult run_criterion(const CriterionSpec& spec, const Settings& s) {
    CriterionResult r;
    r.id = spec.id;
    r.name = spec.name;
    r.budget_seconds = spec.budget_seconds;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto c = spec.run(s);
        r.pass = c.pass;
        r.detail = c.detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
        r.pass = false;
        r.detail += "; over time budget";
    }
    return r;
}

inline std::string format_line(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %2d %s (%.2fs / %.0fs): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds, r.budget_seconds);
    return head + r.detail;
}

}  // namespace brouwer::acceptance
