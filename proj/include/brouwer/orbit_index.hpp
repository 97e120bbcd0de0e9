#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brouwer/errors.hpp"
#include "brouwer/flows.hpp"
#include "brouwer/geometry.hpp"
#include "brouwer/models.hpp"
#include "brouwer/rational.hpp"
#include "brouwer/sampling.hpp"
#include "brouwer/winding.hpp"

namespace brouwer {

enum class IndexMode {
    Standard,    // plain displacement winding, snapped with denominator 2
    Transported  // endpoint angles measured against the curve tangent
};

struct PairIndexResult {
    Rational value;
    WindingResult winding;
    Curve curve_used;
    std::pair<Point, Point> base_points;
    IndexMode mode = IndexMode::Standard;
};

namespace detail {

inline bool horizontal(Vector v, double tol = 1e-6) { return std::abs(std::sin(v.angle())) <= tol; }

[[noreturn]] inline void throw_snap(double raw, std::int64_t denominator) {
    const double nearest = std::round(raw * static_cast<double>(denominator)) / static_cast<double>(denominator);
    throw SnapFailure(raw, nearest, std::abs(raw - nearest));
}

/// floor(phi / pi), refusing values within tol of a multiple of pi.
inline long half_turn_floor(double phi, int which, double tol) {
    const double u = phi / kPi;
    if (std::abs(u - std::round(u)) * kPi < tol) throw NonTransverseEndpoint(which);
    return static_cast<long>(std::floor(u));
}

}  // namespace detail

/// Index of `map` along `curve`. In standard form (horizontal displacement at both ends) the
/// raw winding is snapped to a half-integer. Otherwise the displacement angle is taken relative
/// to the curve tangent at each end, and the index counts the half-turns it completes.
inline PairIndexResult curve_index(const PlanarMap& map, const Curve& curve, const WindingOptions& opts = {},
                                   double transverse_tol = 1e-3) {
    auto w = displacement_winding(map, curve, opts);
    const Point a = curve.start(), b = curve.end();
    const Vector d0 = map(a) - a, d1 = map(b) - b;
    if (detail::horizontal(d0) && detail::horizontal(d1)) {
        if (!w.snapped) detail::throw_snap(w.raw, opts.snap_denominator);
        return {*w.snapped, w, curve, {a, b}, IndexMode::Standard};
    }
    const double phi0 = d0.angle() - curve.tangent_angle(0.0);
    const double phi1 = phi0 + kTwoPi * w.raw - curve.total_turning();
    const long k0 = detail::half_turn_floor(phi0, 0, transverse_tol);
    const long k1 = detail::half_turn_floor(phi1, 1, transverse_tol);
    return {Rational(k1 - k0, 2), w, curve, {a, b}, IndexMode::Transported};
}

/// Index between the points a and b. Without a curve the straight segment is tried first, then
/// jittered three-point polylines drawn from `seed`.
inline PairIndexResult pair_index(const PlanarMap& map, Point a, Point b, const std::optional<Curve>& curve = std::nullopt,
                                  const WindingOptions& opts = {}, std::uint64_t seed = 1) {
    if (curve) {
        if (distance(curve->start(), a) > 1e-9 || distance(curve->end(), b) > 1e-9)
            throw std::invalid_argument("curve endpoints must be the orbit points");
        return curve_index(map, *curve, opts);
    }
    try {
        return curve_index(map, Curve::segment(a, b), opts);
    } catch (const FixedPointOnCurve&) {
    } catch (const RefinementExhausted&) {
    }
    Rng rng(seed);
    const double len = std::max(distance(a, b), 1.0);
    for (int attempt = 0;; ++attempt) {
        const Point mid{0.5 * (a.x + b.x) + rng.uniform(-0.25, 0.25) * len, 0.5 * (a.y + b.y) + rng.uniform(-0.25, 0.25) * len};
        try {
            return curve_index(map, Curve::polyline({a, mid, b}), opts);
        } catch (const FixedPointOnCurve&) {
            if (attempt >= 7) throw;
        } catch (const RefinementExhausted&) {
            if (attempt >= 7) throw;
        }
    }
}

/// Index between declared orbits i and j of a model, along its connector.
inline PairIndexResult pair_index(const ModelHandle& h, std::size_t i, std::size_t j, const WindingOptions& opts = {}) {
    const Point a = h.orbits.at(i).base, b = h.orbits.at(j).base;
    if (h.connector) return curve_index(h.map, h.connect(a, b), opts);
    return pair_index(h.map, a, b, std::nullopt, opts);
}

// ---------------------------------------------------------------------------

struct CurveAuditCase {
    long n_a = 0;
    long n_b = 0;
    std::string curve;
    double raw = 0.0;
    std::optional<Rational> value;
    std::string error;
};

struct CurveIndependenceReport {
    bool pass = true;
    std::vector<CurveAuditCase> cases;
    std::vector<Rational> distinct_values;
};

/// Random polylines from h^n_a(a) to h^n_b(b) with control points drawn in `window`.
inline CurveIndependenceReport curve_independence_audit(const PlanarMap& map, Point a, Point b, std::size_t n_curves,
                                                        std::uint64_t seed, Rect window, long max_iterate = 3,
                                                        const WindingOptions& opts = {}) {
    if (n_curves < 2) throw std::invalid_argument("n_curves must be >= 2");
    Rng rng(seed);
    Orbit oa(map, a, 0), ob(map, b, 0);
    CurveIndependenceReport report;
    for (std::size_t c = 0; c < n_curves; ++c) {
        CurveAuditCase rec;
        rec.n_a = rng.integer(-max_iterate, max_iterate);
        rec.n_b = rng.integer(-max_iterate, max_iterate);
        const auto controls = rng.integer(1, 4);
        std::vector<Point> pts{oa.iterate(rec.n_a)};
        for (long k = 0; k < controls; ++k)
            pts.push_back({rng.uniform(window.xmin, window.xmax), rng.uniform(window.ymin, window.ymax)});
        pts.push_back(ob.iterate(rec.n_b));
        const auto curve = Curve::polyline(pts);
        rec.curve = curve.describe();
        try {
            const auto r = curve_index(map, curve, opts);
            rec.raw = r.winding.raw;
            rec.value = r.value;
            bool seen = false;
            for (const auto& v : report.distinct_values) seen = seen || v == r.value;
            if (!seen) report.distinct_values.push_back(r.value);
        } catch (const Error& e) {
            rec.error = e.what();
            report.pass = false;
        }
        report.cases.push_back(std::move(rec));
    }
    if (report.distinct_values.size() > 1) report.pass = false;
    return report;
}

// ---------------------------------------------------------------------------

struct ConjugacyCase {
    std::string change;
    double raw = 0.0;
    double endpoint_correction = 0.0;
    std::optional<Rational> value;
    std::string error;
};

struct ConjugacyReport {
    bool pass = true;
    Rational reference;
    std::vector<ConjugacyCase> cases;
};

/// Index of psi h psi^-1 along psi(curve), brought back to standard coordinates along the isotopy
/// F_t = psi_(1-t) psi^-1: the raw winding is corrected by the angle swept by
/// F_t(h'(x)) - F_t(x) at the two endpoints.
inline ConjugacyCase transported_index(const PlanarMap& h, const Curve& curve, const CoordinateChange& change,
                                       const WindingOptions& opts = {}) {
    ConjugacyCase rec;
    rec.change = change.name;
    const PlanarMap psi = change.map();
    check_inverse(psi, psi.inverted(), curve.vertices());
    const PlanarMap conj = compose({psi, h, psi.inverted()});
    std::vector<Point> moved;
    for (const auto& p : curve.vertices()) moved.push_back(psi(p));
    const Curve pushed = curve.is_polyline() ? Curve::polyline(moved)
                                             : Curve::analytic([curve, psi](double s) { return psi(curve.at(s)); },
                                                               curve.label() + "'", curve.breakpoints());
    auto endpoint_sweep = [&](Point x) {
        const Point hx = conj(x);
        auto delta = [&](Point tp) {
            const PlanarMap ft = compose({change.isotopy(1.0 - tp.x), psi.inverted()});
            return ft(hx) - ft(x);
        };
        return winding_along(delta, Curve::segment({0.0, 0.0}, {1.0, 0.0}), opts).raw;
    };
    const auto w = displacement_winding(conj, pushed, opts);
    rec.raw = w.raw;
    rec.endpoint_correction = endpoint_sweep(pushed.end()) - endpoint_sweep(pushed.start());
    const double total = rec.raw + rec.endpoint_correction;
    rec.value = snap_to_fraction(total, 2, opts.snap_tolerance);
    return rec;
}

/// Checks that the index along `curve` survives every change of coordinates in the catalog.
inline ConjugacyReport conjugacy_invariance_audit(const PlanarMap& h, const Curve& curve,
                                                  const std::vector<CoordinateChange>& changes,
                                                  const WindingOptions& opts = {}) {
    ConjugacyReport report;
    report.reference = curve_index(h, curve, opts).value;
    for (const auto& change : changes) {
        ConjugacyCase rec;
        try {
            rec = transported_index(h, curve, change, opts);
            if (!(*rec.value == report.reference)) report.pass = false;
        } catch (const NotInverse&) {
            throw;
        } catch (const Error& e) {
            rec.change = change.name;
            rec.error = e.what();
            report.pass = false;
        }
        report.cases.push_back(std::move(rec));
    }
    return report;
}

/// Rotations, a shear, psi0 and T1^2 T2^-1.
inline std::vector<CoordinateChange> standard_change_catalog() {
    return {rotation_change({7.0, -2.0}, kPi / 6), rotation_change({0.0, 0.0}, 3 * kPi / 4), shear_change(3.0),
            psi0_change(), twist_word_change(2, -1)};
}

// ---------------------------------------------------------------------------

/// Index along a curve joining h^n0(o) to h^n1(o); a straight segment by default.
inline Rational same_orbit_index(const PlanarMap& map, Orbit& o, long n0, long n1,
                                 const std::optional<Curve>& curve = std::nullopt, const WindingOptions& opts = {}) {
    if (n0 == n1) throw std::invalid_argument("same_orbit_index needs n0 != n1");
    const Point a = o.iterate(n0), b = o.iterate(n1);
    return pair_index(map, a, b, curve, opts).value;
}

struct TripleReport {
    Rational i12, i23, i31;
    Rational sum;
    double raw12 = 0.0, raw23 = 0.0, raw31 = 0.0;
    std::optional<Rational> predicted;

    [[nodiscard]] bool agrees() const { return !predicted || *predicted == sum; }
};

inline TripleReport triple_sum(const ModelHandle& h, std::size_t o1, std::size_t o2, std::size_t o3,
                               const WindingOptions& opts = {}) {
    if (o1 == o2 || o2 == o3 || o1 == o3) throw std::invalid_argument("triple_sum needs three distinct orbits");
    const auto a = pair_index(h, o1, o2, opts);
    const auto b = pair_index(h, o2, o3, opts);
    const auto c = pair_index(h, o3, o1, opts);
    TripleReport r;
    r.i12 = a.value;
    r.i23 = b.value;
    r.i31 = c.value;
    r.raw12 = a.winding.raw;
    r.raw23 = b.winding.raw;
    r.raw31 = c.winding.raw;
    r.sum = r.i12 + r.i23 + r.i31;
    return r;
}

// ---------------------------------------------------------------------------

struct SquareAuditReport {
    bool pass = false;
    double raw = 0.0;
    std::optional<Rational> snapped;
};

/// Winding of D(s,t) = F_t(h(g(s))) - F_t(g(s)) around the boundary of [0,1]^2.
inline SquareAuditReport square_boundary_audit(const PlanarMap& h, const std::function<PlanarMap(double)>& isotopy,
                                               const Curve& curve, const WindingOptions& opts = {}) {
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto ft = isotopy(t);
        check_inverse(ft, ft.inverted(), curve.vertices());
    }
    auto delta = [&](Point st) {
        const auto ft = isotopy(st.y);
        const Point x = curve.at(st.x);
        return ft(h(x)) - ft(x);
    };
    // each edge gets the full initial sampling
    const Point corners[] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
    SquareAuditReport r;
    for (int e = 0; e < 4; ++e) r.raw += winding_along(delta, Curve::segment(corners[e], corners[e + 1]), opts).raw;
    const double nearest = std::round(r.raw);
    if (std::abs(r.raw - nearest) <= opts.snap_tolerance) r.snapped = Rational(static_cast<std::int64_t>(nearest));
    r.pass = r.snapped && r.snapped->num() == 0;
    return r;
}

}  // namespace brouwer
