#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brouwer/errors.hpp"
#include "brouwer/flows.hpp"
#include "brouwer/geometry.hpp"

namespace brouwer {

/// A proper line through a declared orbit, sampled inside a window, with the asymptotic
/// directions of its two ends. Points run from the backward end to the forward end.
struct Streamline {
    std::vector<Point> polyline;
    double backward_angle = 0.0;
    double forward_angle = 0.0;
};

struct DeclaredOrbit {
    Point base;
    std::string description;
    std::optional<Streamline> streamline;
};

/// A model map (and its generating field, when it is a flow) with declared orbits.
struct ModelHandle {
    std::string id;
    PlanarMap map;
    std::optional<VectorField> field;
    std::vector<DeclaredOrbit> orbits;
    std::optional<std::string> class_hint;
    bool brouwer = true;  // orientation preserving and fixed point free
    Rect window{-10, 10, -1, 4};
    /// Default curve between two points of declared orbits; empty means a straight segment.
    std::function<Curve(Point, Point)> connector;

    [[nodiscard]] Curve connect(Point a, Point b) const { return connector ? connector(a, b) : Curve::segment(a, b); }
};

/// A change of coordinates with an isotopy from the identity (t = 0) to it (t = 1).
struct CoordinateChange {
    std::string name;
    std::function<PlanarMap(double)> isotopy;

    [[nodiscard]] PlanarMap map() const { return isotopy(1.0); }
};

namespace detail {

/// Exact at the quarter points so strip boundaries match bit for bit.
inline double cos_pi(double u) {
    if (u == 0.0) return 1.0;
    if (u == 0.5) return 0.0;
    if (u == 1.0) return -1.0;
    return std::cos(kPi * u);
}

inline double sin_pi(double u) {
    if (u == 0.0 || u == 1.0) return 0.0;
    if (u == 0.5) return 1.0;
    return std::sin(kPi * u);
}

inline Streamline horizontal_streamline(double y, int direction, double half_width) {
    Streamline s;
    if (direction > 0) {
        s.polyline = {{-half_width, y}, {half_width, y}};
        s.backward_angle = kPi;
        s.forward_angle = 0.0;
    } else {
        s.polyline = {{half_width, y}, {-half_width, y}};
        s.backward_angle = 0.0;
        s.forward_angle = kPi;
    }
    return s;
}

inline Point rotate_about(Point p, Point c, double angle) {
    const double cs = std::cos(angle), sn = std::sin(angle);
    const double dx = p.x - c.x, dy = p.y - c.y;
    return {c.x + cs * dx - sn * dy, c.y + sn * dx + cs * dy};
}

/// 1 on [0, r0], 0 on [r1, inf), linear between.
inline double twist_profile(double r, double r0, double r1) {
    if (r <= r0) return 1.0;
    if (r >= r1) return 0.0;
    return (r1 - r) / (r1 - r0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Affine maps

inline PlanarMap translation_map(double dx, double dy = 0.0) {
    return {[dx, dy](Point p) { return Point{p.x + dx, p.y + dy}; },
            [dx, dy](Point p) { return Point{p.x - dx, p.y - dy}; }, "translation", true};
}

/// T1^n1 T2^n2 : (x, y) -> (x + n1 (2 - y) + n2 (y - 1), y). Scaled by t for the isotopy.
inline PlanarMap twist_word_map(double n1, double n2) {
    auto shift = [n1, n2](double y) { return n1 * (2.0 - y) + n2 * (y - 1.0); };
    return {[shift](Point p) { return Point{p.x + shift(p.y), p.y}; },
            [shift](Point p) { return Point{p.x - shift(p.y), p.y}; },
            "T1^" + std::to_string(static_cast<int>(n1)) + "T2^" + std::to_string(static_cast<int>(n2)), true};
}

inline PlanarMap rotation_map(Point center, double angle) {
    return {[center, angle](Point p) { return detail::rotate_about(p, center, angle); },
            [center, angle](Point p) { return detail::rotate_about(p, center, -angle); }, "rotation", true};
}

/// (x, y) -> (x + k y, y)
inline PlanarMap shear_map(double k) {
    return {[k](Point p) { return Point{p.x + k * p.y, p.y}; }, [k](Point p) { return Point{p.x - k * p.y, p.y}; },
            "shear", true};
}

inline CoordinateChange rotation_change(Point center, double angle) {
    return {"rotation(" + std::to_string(angle) + ")", [center, angle](double t) { return rotation_map(center, t * angle); }};
}

inline CoordinateChange shear_change(double k) {
    return {"shear(" + std::to_string(k) + ")", [k](double t) { return shear_map(t * k); }};
}

inline CoordinateChange twist_word_change(int n1, int n2) {
    return {"T1^" + std::to_string(n1) + "T2^" + std::to_string(n2),
            [n1, n2](double t) { return twist_word_map(t * n1, t * n2); }};
}

// ---------------------------------------------------------------------------
// Twists with compact support

/// p -> c + Rot(2 pi rho(|p - c|)) (p - c); identity in the core and outside radius r1.
inline PlanarMap dehn_twist_map(Point center, double r0, double r1) {
    if (!(0.0 < r0 && r0 < r1)) throw std::invalid_argument("dehn twist requires 0 < r0 < r1");
    auto apply = [center, r0, r1](Point p, double sign) {
        const double r = distance(p, center);
        const double rho = detail::twist_profile(r, r0, r1);
        if (rho == 0.0 || rho == 1.0) return p;
        return detail::rotate_about(p, center, sign * kTwoPi * rho);
    };
    return {[apply](Point p) { return apply(p, 1.0); }, [apply](Point p) { return apply(p, -1.0); }, "dehn", true};
}

/// Half-twist in an elliptical annulus around c: in coordinates q = ((x-cx)/sx, (y-cy)/sy) it
/// rotates by t pi rho(|q|) with rho = 1 on [0, 0.6] and 0 on [0.9, inf).
inline Point half_twist(Point p, Point c, double t, double sign) {
    constexpr double sx = 0.4, sy = 1.0, r0 = 0.6, r1 = 0.9;
    const Point q{(p.x - c.x) / sx, (p.y - c.y) / sy};
    const double rho = detail::twist_profile(q.norm(), r0, r1);
    if (rho == 0.0) return p;
    const Point rq = detail::rotate_about(q, {0.0, 0.0}, sign * t * kPi * rho);
    return {c.x + sx * rq.x, c.y + sy * rq.y};
}

/// Psi1 at isotopy time t: the T-equivariant product of half-twists centred at (n, 1.5).
/// Supports are pairwise disjoint, so only the nearest twist acts.
inline PlanarMap psi1_map(double t) {
    auto apply = [t](Point p, double sign) { return half_twist(p, {std::round(p.x), 1.5}, t, sign); };
    return {[apply](Point p) { return apply(p, 1.0); }, [apply](Point p) { return apply(p, -1.0); }, "psi1", true};
}

/// Psi0 = Psi2 Psi1 with Psi2 the half-turn about (0, 1.5); the isotopy runs both factors together.
inline CoordinateChange psi0_change() {
    return {"psi0", [](double t) {
                auto m = compose({rotation_map({0.0, 1.5}, t * kPi), psi1_map(t)});
                m.name = "psi0";
                return m;
            }};
}

// ---------------------------------------------------------------------------
// Fields

/// Boundary directions and field of a stack of horizontal strips. Lines sit at y = 1, 1 + h0, ...
class StripStack {
public:
    enum class Kind { Translation, Reeb };
    struct Strip {
        Kind kind = Kind::Reeb;
        int sign = 1;  // Translation direction, or Reeb turn
        double height = 1.0;
    };

    explicit StripStack(std::vector<Strip> strips) : strips_(std::move(strips)) {
        if (strips_.empty()) throw std::invalid_argument("stack needs at least one strip");
        lines_.push_back(1.0);
        directions_.push_back(strips_.front().kind == Kind::Translation ? strips_.front().sign : 1);
        for (std::size_t k = 0; k < strips_.size(); ++k) {
            const auto& s = strips_[k];
            if (s.sign != 1 && s.sign != -1) throw std::invalid_argument("strip sign must be +1 or -1");
            if (!(s.height > 0.0)) throw std::invalid_argument("strip height must be positive");
            if (s.kind == Kind::Translation && s.sign != directions_.back()) throw InconsistentBoundaryDirections(k + 1);
            directions_.push_back(s.kind == Kind::Translation ? s.sign : -directions_.back());
            lines_.push_back(lines_.back() + s.height);
        }
    }

    [[nodiscard]] const std::vector<double>& lines() const { return lines_; }
    [[nodiscard]] const std::vector<int>& directions() const { return directions_; }
    [[nodiscard]] const std::vector<Strip>& strips() const { return strips_; }

    /// Field of strip k at relative height u in [0, 1].
    [[nodiscard]] Vector strip_field(std::size_t k, double u) const {
        const auto& s = strips_[k];
        const double b = directions_[k];
        if (s.kind == Kind::Translation) return {b, 0.0};
        return {b * detail::cos_pi(u), b * s.sign * detail::sin_pi(u)};
    }

    [[nodiscard]] Vector operator()(Point p) const {
        if (p.y <= lines_.front()) return {static_cast<double>(directions_.front()), 0.0};
        if (p.y >= lines_.back()) return {static_cast<double>(directions_.back()), 0.0};
        std::size_t k = 0;
        while (k + 1 < strips_.size() && p.y >= lines_[k + 1]) ++k;
        return strip_field(k, (p.y - lines_[k]) / strips_[k].height);
    }

private:
    std::vector<Strip> strips_;
    std::vector<double> lines_;
    std::vector<int> directions_;
};

using StripDescriptor = StripStack::Strip;

inline StripDescriptor reeb_strip(int turn, double height = 1.0) { return {StripStack::Kind::Reeb, turn, height}; }
inline StripDescriptor translation_strip(int direction, double height = 1.0) {
    return {StripStack::Kind::Translation, direction, height};
}

inline VectorField reeb_field() {
    return {[](Point p) {
                if (p.y <= 1.0) return Vector{1.0, 0.0};
                if (p.y >= 2.0) return Vector{-1.0, 0.0};
                const double u = p.y - 1.0;
                return Vector{detail::cos_pi(u), detail::sin_pi(u)};
            },
            "reeb", "Lipschitz, piecewise smooth"};
}

/// Speed-normalised Hamiltonian field of H = e^x sin y.
inline VectorField pocket_field() {
    return {[](Point p) {
                // e^x / (1 + e^x) written to avoid overflow
                const double w = p.x > 0 ? 1.0 / (1.0 + std::exp(-p.x)) : std::exp(p.x) / (1.0 + std::exp(p.x));
                return Vector{w * std::cos(p.y), -w * std::sin(p.y)};
            },
            "pocket", "analytic"};
}

inline double pocket_hamiltonian(Point p) { return std::exp(p.x) * std::sin(p.y); }

/// Integrates the leaf through p in both time directions until it leaves the window
/// or the time budget runs out. Points run backward end to forward end.
inline std::vector<Point> trace_leaf(const VectorField& field, Point p, Rect window, double dt = 0.05,
                                     double max_time = 200.0, const IntegratorSettings& settings = {}) {
    auto inside = [&](Point q) { return q.x >= window.xmin && q.x <= window.xmax && q.y >= window.ymin && q.y <= window.ymax; };
    auto run = [&](double sign) {
        std::vector<Point> pts;
        Point q = p;
        for (double t = 0.0; t < max_time && inside(q); t += dt) {
            q = integrate(field, q, sign * dt, settings);
            pts.push_back(q);
        }
        return pts;
    };
    auto back = run(-1.0);
    auto fwd = run(1.0);
    std::vector<Point> out(back.rbegin(), back.rend());
    out.push_back(p);
    out.insert(out.end(), fwd.begin(), fwd.end());
    return out;
}

// ---------------------------------------------------------------------------
// Model constructors

inline ModelHandle make_translation() {
    ModelHandle h;
    h.id = "translation";
    h.map = translation_map(1.0);
    h.map.name = "T";
    h.field = VectorField{[](Point) { return Vector{1.0, 0.0}; }, "constant", "analytic"};
    h.orbits = {{{0.0, 1.0}, "Z x {1}", detail::horizontal_streamline(1.0, 1, 30.0)},
                {{0.0, 2.0}, "Z x {2}", detail::horizontal_streamline(2.0, 1, 30.0)}};
    h.class_hint = "T";
    h.window = {-10, 10, 0, 3};
    return h;
}

/// T1(x,y) = (x + 2 - y, y), T2(x,y) = (x + y - 1, y). Not fixed point free.
inline std::pair<ModelHandle, ModelHandle> make_twists() {
    ModelHandle t1;
    t1.id = "twist1";
    t1.map = twist_word_map(1, 0);
    t1.map.name = "T1";
    t1.brouwer = false;
    t1.orbits = {{{0.0, 1.0}, "Z x {1}", std::nullopt}, {{0.0, 2.0}, "Z x {2} (fixed)", std::nullopt}};
    ModelHandle t2 = t1;
    t2.id = "twist2";
    t2.map = twist_word_map(0, 1);
    t2.map.name = "T2";
    t2.orbits[0].description = "Z x {1} (fixed)";
    t2.orbits[1].description = "Z x {2}";
    return {t1, t2};
}

inline ModelHandle make_flow_handle(std::string id, VectorField field, const IntegratorSettings& settings = {}) {
    ModelHandle h;
    h.id = std::move(id);
    h.map = time_one_map(field, settings);
    h.field = std::move(field);
    return h;
}

inline ModelHandle make_stack(const std::vector<StripDescriptor>& strips, const IntegratorSettings& settings = {}) {
    const StripStack stack(strips);
    std::string id = "stack:";
    for (std::size_t i = 0; i < strips.size(); ++i) {
        id += i ? "," : "";
        id += strips[i].kind == StripStack::Kind::Reeb ? "R" : "T";
        id += strips[i].sign > 0 ? "+" : "-";
    }
    auto shared = std::make_shared<const StripStack>(stack);
    VectorField field{[shared](Point p) { return (*shared)(p); }, id, "Lipschitz, piecewise smooth"};
    auto h = make_flow_handle(id, field, settings);
    for (std::size_t k = 0; k < stack.lines().size(); ++k) {
        const double y = stack.lines()[k];
        const int d = stack.directions()[k];
        h.orbits.push_back({{0.0, y}, "line y=" + std::to_string(y) + (d > 0 ? " (+)" : " (-)"),
                            detail::horizontal_streamline(y, d, 30.0)});
    }
    h.window = {-10, 10, 0, stack.lines().back() + 1};
    return h;
}

inline ModelHandle make_reeb_flow(const IntegratorSettings& settings = {}) {
    auto h = make_flow_handle("reeb", reeb_field(), settings);
    h.orbits = {{{0.0, 1.0}, "Z x {1}", detail::horizontal_streamline(1.0, 1, 30.0)},
                {{0.0, 2.0}, "Z x {2}", detail::horizontal_streamline(2.0, -1, 30.0)}};
    h.class_hint = "R";
    h.window = {-10, 10, 0, 3};
    return h;
}

/// Lines y = 1..n carrying the given directions; Translation strips between equal neighbours,
/// Reeb{+1} strips between opposite ones.
inline ModelHandle make_parallel_flow(const std::vector<int>& directions, const IntegratorSettings& settings = {}) {
    if (directions.size() < 2) throw std::invalid_argument("parallel flow needs at least two lines");
    std::vector<StripDescriptor> strips;
    for (std::size_t i = 0; i + 1 < directions.size(); ++i) {
        if (directions[i] == directions[i + 1]) {
            strips.push_back(translation_strip(directions[i]));
        } else {
            strips.push_back(reeb_strip(1));
        }
    }
    // a stack starting with a Reeb strip has bottom direction +1; flip the whole picture otherwise
    if (strips.front().kind == StripStack::Kind::Reeb && directions.front() < 0) {
        auto h = make_parallel_flow([&] {
            std::vector<int> d;
            for (int x : directions) d.push_back(-x);
            return d;
        }(), settings);
        // reversing time negates the field: same lines, opposite directions
        auto base = h.field->eval;
        VectorField field{[base](Point p) { return -base(p); }, "", "Lipschitz, piecewise smooth"};
        std::string id = "parallel:";
        for (std::size_t i = 0; i < directions.size(); ++i) id += std::string(i ? "," : "") + (directions[i] > 0 ? "+" : "-");
        field.name = id;
        auto out = make_flow_handle(id, field, settings);
        out.orbits = h.orbits;
        for (std::size_t k = 0; k < out.orbits.size(); ++k) {
            const double y = out.orbits[k].base.y;
            out.orbits[k].streamline = detail::horizontal_streamline(y, directions[k], 30.0);
            out.orbits[k].description = "line y=" + std::to_string(y) + (directions[k] > 0 ? " (+)" : " (-)");
        }
        out.window = h.window;
        return out;
    }
    auto h = make_stack(strips, settings);
    std::string id = "parallel:";
    for (std::size_t i = 0; i < directions.size(); ++i) id += std::string(i ? "," : "") + (directions[i] > 0 ? "+" : "-");
    h.id = id;
    return h;
}

/// The Hamiltonian "pocket" flow of H = e^x sin y. Declared orbits, by increasing y = k pi / 2
/// for k = 0..12: even k are the invariant lines y = j pi, odd k the U-shaped leaves H = +-1
/// through their leftmost point (0, k pi / 2).
inline ModelHandle make_pocket_flow(const IntegratorSettings& settings = {}) {
    auto h = make_flow_handle("pocket", pocket_field(), settings);
    h.window = {-5, 30, -1, 6 * kPi + 1};
    const Rect trace_window{-30, 30, -1, 6 * kPi + 1};
    for (int k = 0; k <= 12; ++k) {
        const double y = k * kPi / 2;
        DeclaredOrbit o;
        o.base = {0.0, y};
        if (k % 2 == 0) {
            const int d = (k / 2) % 2 == 0 ? 1 : -1;
            o.description = "line y=" + std::to_string(k / 2) + "pi";
            o.streamline = detail::horizontal_streamline(y, d, 30.0);
        } else {
            const int H = (k / 2) % 2 == 0 ? 1 : -1;
            o.description = std::string("leaf H=") + (H > 0 ? "+1" : "-1") + " at y=" + std::to_string(k) + "pi/2";
            Streamline s;
            s.polyline = trace_leaf(*h.field, o.base, trace_window, 0.05, 200.0, settings);
            s.backward_angle = 0.0;
            s.forward_angle = 0.0;
            o.streamline = std::move(s);
        }
        h.orbits.push_back(std::move(o));
    }
    // leave sideways through the region left of every pocket, then come back
    h.connector = [](Point a, Point b) {
        const double sigma = b.y >= a.y ? 1.0 : -1.0;
        const double x = std::min({a.x, b.x, 0.0}) - 1.0;
        constexpr double lift = 0.3;
        if (std::abs(b.y - a.y) <= 2 * lift) return Curve::polyline({a, {x, 0.5 * (a.y + b.y)}, b});
        return Curve::polyline({a, {x, a.y + sigma * lift}, {x, b.y - sigma * lift}, b});
    };
    return h;
}

/// Samples on which a conjugating pair must be mutually inverse.
inline std::vector<Point> inverse_check_samples(const ModelHandle& h) {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            pts.push_back({h.window.xmin + (h.window.xmax - h.window.xmin) * i / 9.0,
                           h.window.ymin + (h.window.ymax - h.window.ymin) * j / 9.0});
    for (const auto& o : h.orbits) pts.push_back(o.base);
    return pts;
}

inline void check_inverse(const PlanarMap& psi, const PlanarMap& psi_inverse, const std::vector<Point>& samples,
                          double tol = 1e-8) {
    for (const auto& p : samples) {
        if (distance(psi(psi_inverse(p)), p) > tol || distance(psi_inverse(psi(p)), p) > tol)
            throw NotInverse("maps are not mutually inverse at (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    }
}

/// psi h psi^-1 with declared orbits pushed through psi.
inline ModelHandle conjugate(const ModelHandle& h, const PlanarMap& psi, const PlanarMap& psi_inverse) {
    check_inverse(psi, psi_inverse, inverse_check_samples(h));
    ModelHandle out;
    out.id = h.id + "^" + psi.name;
    out.map.name = psi.name + "*" + h.map.name + "*" + psi.name + "^-1";
    out.map.orientation_preserving = h.map.orientation_preserving;
    auto inner = h.map;
    out.map.forward = [psi, inner, psi_inverse](Point p) { return psi(inner(psi_inverse(p))); };
    if (inner.invertible())
        out.map.backward = [psi, inner, psi_inverse](Point p) { return psi(inner.inverse(psi_inverse(p))); };
    for (const auto& o : h.orbits) {
        DeclaredOrbit pushed{psi(o.base), o.description, std::nullopt};
        out.orbits.push_back(pushed);
    }
    out.brouwer = h.brouwer;
    out.window = h.window;
    return out;
}

inline ModelHandle conjugate(const ModelHandle& h, const PlanarMap& psi) { return conjugate(h, psi, psi.inverted()); }

/// Phi T Phi^-1 for the Dehn twist Phi about `center`.
inline ModelHandle make_dehn_conjugate(Point center = {0.5, 2.0}, double r0 = 0.6, double r1 = 0.9) {
    auto phi = dehn_twist_map(center, r0, r1);
    auto h = conjugate(make_translation(), phi);
    char buf[96];
    std::snprintf(buf, sizeof buf, "dehn:%g,%g,%g,%g", center.x, center.y, r0, r1);
    h.id = buf;
    return h;
}

inline ModelHandle make_dehn_twist(Point center = {0.5, 2.0}, double r0 = 0.6, double r1 = 0.9) {
    ModelHandle h;
    h.id = "dehn-twist";
    h.map = dehn_twist_map(center, r0, r1);
    h.brouwer = false;
    h.window = {center.x - 2 * r1, center.x + 2 * r1, center.y - 2 * r1, center.y + 2 * r1};
    return h;
}

inline ModelHandle make_psi0() {
    ModelHandle h;
    h.id = "psi0";
    h.map = psi0_change().map();
    h.brouwer = false;
    h.orbits = {{{0.0, 1.0}, "Z x {1}", std::nullopt}, {{0.0, 2.0}, "Z x {2}", std::nullopt}};
    return h;
}

/// Sign of the finite-difference Jacobian of `map` at p.
inline double jacobian_sign(const PlanarMap& map, Point p, double h = 1e-5) {
    const Vector ex = map({p.x + h, p.y}) - map({p.x - h, p.y});
    const Vector ey = map({p.x, p.y + h}) - map({p.x, p.y - h});
    const double det = ex.dx * ey.dy - ex.dy * ey.dx;
    return det > 0 ? 1.0 : (det < 0 ? -1.0 : 0.0);
}

}  // namespace brouwer
