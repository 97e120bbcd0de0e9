#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brouwer/errors.hpp"
#include "brouwer/geometry.hpp"

namespace brouwer {

/// A planar vector field; the evaluator must be total and finite.
struct VectorField {
    std::function<Vector(Point)> eval;
    std::string name = "field";
    std::string smoothness = "C0";

    Vector operator()(Point p) const { return eval(p); }
};

/// A point transformation with optional inverse.
struct PlanarMap {
    std::function<Point(Point)> forward;
    std::function<Point(Point)> backward;  // empty when no inverse is known
    std::string name = "map";
    bool orientation_preserving = true;

    Point operator()(Point p) const { return forward(p); }
    [[nodiscard]] bool invertible() const { return static_cast<bool>(backward); }
    [[nodiscard]] Point inverse(Point p) const {
        if (!backward) throw Error("map '" + name + "' has no inverse");
        return backward(p);
    }
    [[nodiscard]] PlanarMap inverted() const {
        if (!backward) throw Error("map '" + name + "' has no inverse");
        return {backward, forward, name + "^-1", orientation_preserving};
    }
};

inline PlanarMap identity_map() {
    auto id = [](Point p) { return p; };
    return {id, id, "id", true};
}

/// Right-to-left composition: compose({f, g})(p) = f(g(p)).
inline PlanarMap compose(std::vector<PlanarMap> maps) {
    if (maps.empty()) return identity_map();
    if (maps.size() == 1) return maps.front();
    std::string name;
    bool orient = true;
    bool invertible = true;
    for (const auto& m : maps) {
        name += (name.empty() ? "" : "*") + m.name;
        orient = orient == m.orientation_preserving;
        invertible = invertible && m.invertible();
    }
    auto shared = std::make_shared<const std::vector<PlanarMap>>(std::move(maps));
    PlanarMap out;
    out.name = name;
    out.orientation_preserving = orient;
    out.forward = [shared](Point p) {
        for (auto it = shared->rbegin(); it != shared->rend(); ++it) p = it->forward(p);
        return p;
    };
    if (invertible) {
        out.backward = [shared](Point p) {
            for (const auto& m : *shared) p = m.backward(p);
            return p;
        };
    }
    return out;
}

struct IntegratorSettings {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-12;
    double max_step = 0.25;
    std::size_t max_steps = 200000;
};

/// Dormand-Prince 5(4) with step-size control. Integrates dp/dt = field(p) from 0 to t
/// (t may be negative).
inline Point integrate(const VectorField& field, Point p, double t, const IntegratorSettings& settings = {}) {
    if (!(settings.relative_tolerance > 0.0) || !(settings.absolute_tolerance > 0.0))
        throw std::invalid_argument("integrator tolerances must be positive");
    if (!p.finite()) throw NonFiniteState("non-finite initial point");
    if (t == 0.0) return p;

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;
    (void)c2, (void)c3, (void)c4, (void)c5;

    const double sign = t > 0 ? 1.0 : -1.0;
    const double total = std::abs(t);
    auto f = [&](Point q) {
        const Vector v = field(q);
        return Vector{sign * v.dx, sign * v.dy};
    };
    auto add = [](Point q, double h, std::initializer_list<std::pair<double, Vector>> terms) {
        double dx = 0, dy = 0;
        for (const auto& [c, k] : terms) {
            dx += c * k.dx;
            dy += c * k.dy;
        }
        return Point{q.x + h * dx, q.y + h * dy};
    };

    double done = 0.0;
    double h = std::min(settings.max_step, total);
    Vector k1 = f(p);
    std::size_t steps = 0;
    while (done < total) {
        if (++steps > settings.max_steps) throw StepLimitExceeded("integrator step limit exceeded");
        h = std::min({h, total - done, settings.max_step});
        const Vector k2 = f(add(p, h, {{a21, k1}}));
        const Vector k3 = f(add(p, h, {{a31, k1}, {a32, k2}}));
        const Vector k4 = f(add(p, h, {{a41, k1}, {a42, k2}, {a43, k3}}));
        const Vector k5 = f(add(p, h, {{a51, k1}, {a52, k2}, {a53, k3}, {a54, k4}}));
        const Vector k6 = f(add(p, h, {{a61, k1}, {a62, k2}, {a63, k3}, {a64, k4}, {a65, k5}}));
        const Point next = add(p, h, {{b1, k1}, {b3, k3}, {b4, k4}, {b5, k5}, {b6, k6}});
        if (!next.finite()) throw NonFiniteState("integrator produced a non-finite state");
        const Vector k7 = f(next);
        const Vector err{h * (e1 * k1.dx + e3 * k3.dx + e4 * k4.dx + e5 * k5.dx + e6 * k6.dx + e7 * k7.dx),
                         h * (e1 * k1.dy + e3 * k3.dy + e4 * k4.dy + e5 * k5.dy + e6 * k6.dy + e7 * k7.dy)};
        const double sx = settings.absolute_tolerance +
                          settings.relative_tolerance * std::max(std::abs(p.x), std::abs(next.x));
        const double sy = settings.absolute_tolerance +
                          settings.relative_tolerance * std::max(std::abs(p.y), std::abs(next.y));
        const double norm = std::max(std::abs(err.dx) / sx, std::abs(err.dy) / sy);
        if (norm <= 1.0) {
            done += h;
            p = next;
            k1 = k7;
        }
        const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        h *= factor;
        if (h < 1e-14 * std::max(1.0, total)) throw StepLimitExceeded("integrator step size underflow");
    }
    return p;
}

/// Flow of `field` for a fixed time, as a planar map with the reverse flow as inverse.
inline PlanarMap flow_map(const VectorField& field, double time, const IntegratorSettings& settings = {}) {
    PlanarMap m;
    m.name = field.name + "@t=" + std::to_string(time);
    m.orientation_preserving = true;
    m.forward = [field, time, settings](Point p) { return integrate(field, p, time, settings); };
    m.backward = [field, time, settings](Point p) { return integrate(field, p, -time, settings); };
    return m;
}

inline PlanarMap time_one_map(const VectorField& field, const IntegratorSettings& settings = {}) {
    auto m = flow_map(field, 1.0, settings);
    m.name = field.name + "_1";
    return m;
}

/// Iterates of a base point under a map, cached lazily for n in [-depth, depth].
/// Extending the cache mutates it; share only after precomputing.
class Orbit {
public:
    Orbit(PlanarMap map, Point base, std::size_t depth = 20) : map_(std::move(map)), forward_{base}, backward_{base} {
        if (!base.finite()) throw NonFiniteState("non-finite orbit base");
        extend(depth);
    }

    [[nodiscard]] Point base() const { return forward_.front(); }
    [[nodiscard]] const PlanarMap& map() const { return map_; }
    [[nodiscard]] std::size_t forward_depth() const { return forward_.size() - 1; }
    [[nodiscard]] std::size_t backward_depth() const { return backward_.size() - 1; }
    [[nodiscard]] std::size_t depth() const { return std::min(forward_depth(), backward_depth()); }

    void extend(std::size_t depth) {
        extend_forward(depth);
        if (map_.invertible()) extend_backward(depth);
    }

    void extend_forward(std::size_t depth) {
        while (forward_.size() <= depth) {
            const Point next = map_(forward_.back());
            if (!next.finite()) throw NonFiniteState("orbit iterate is not finite");
            forward_.push_back(next);
        }
    }

    void extend_backward(std::size_t depth) {
        while (backward_.size() <= depth) {
            const Point prev = map_.inverse(backward_.back());
            if (!prev.finite()) throw NonFiniteState("orbit iterate is not finite");
            backward_.push_back(prev);
        }
    }

    /// h^n(base), extending the cache when needed.
    Point iterate(long n) {
        if (n >= 0) {
            extend_forward(static_cast<std::size_t>(n));
            return forward_[static_cast<std::size_t>(n)];
        }
        extend_backward(static_cast<std::size_t>(-n));
        return backward_[static_cast<std::size_t>(-n)];
    }

    [[nodiscard]] Point cached(long n) const {
        return n >= 0 ? forward_.at(static_cast<std::size_t>(n)) : backward_.at(static_cast<std::size_t>(-n));
    }

private:
    PlanarMap map_;
    std::vector<Point> forward_;
    std::vector<Point> backward_;
};

struct ProperDirectionReport {
    bool pass = true;
    std::string witness;
    std::vector<long> first_exceed;  // first index exceeding each scheduled radius, or -1
};

struct PropernessReport {
    bool pass = true;
    ProperDirectionReport forward;
    ProperDirectionReport backward;
    std::vector<double> schedule;
    std::size_t max_depth = 0;
};

/// Heuristic properness check: in each time direction the iterates must exceed every scheduled
/// radius within max_depth steps, and after exceeding a radius must never come back below half
/// of it (checked up to the last first-exceed index).
inline PropernessReport properness_probe(Orbit& orbit, std::vector<double> schedule = {10, 20, 40, 80},
                                         std::size_t max_depth = 400) {
    PropernessReport report;
    report.schedule = schedule;
    report.max_depth = max_depth;
    auto probe = [&](int direction) {
        ProperDirectionReport r;
        long last = 0;
        for (double radius : schedule) {
            long hit = -1;
            for (long n = 0; n <= static_cast<long>(max_depth); ++n) {
                if (orbit.iterate(direction * n).norm() > radius) {
                    hit = n;
                    break;
                }
            }
            r.first_exceed.push_back(hit);
            if (hit < 0) {
                r.pass = false;
                r.witness = "radius " + std::to_string(radius) + " not exceeded within " +
                            std::to_string(max_depth) + " iterates";
                return r;
            }
            last = std::max(last, hit);
        }
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            for (long n = r.first_exceed[i]; n <= last; ++n) {
                if (orbit.iterate(direction * n).norm() < schedule[i] / 2) {
                    r.pass = false;
                    r.witness = "iterate " + std::to_string(direction * n) + " returned below half of radius " +
                                std::to_string(schedule[i]);
                    return r;
                }
            }
        }
        return r;
    };
    report.forward = probe(+1);
    if (orbit.map().invertible()) {
        report.backward = probe(-1);
    } else {
        report.backward.pass = false;
        report.backward.witness = "map has no inverse";
    }
    report.pass = report.forward.pass && report.backward.pass;
    return report;
}

struct Rect {
    double xmin, xmax, ymin, ymax;
};

struct AuditReport {
    bool pass = true;
    double minimum = std::numeric_limits<double>::infinity();
    Point location{};
};

/// Grid audit of min |f| over the nodes of an nx-by-ny grid.
inline AuditReport magnitude_audit(const std::function<Vector(Point)>& f, Rect region, std::size_t nx, std::size_t ny,
                                   double threshold) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("audit grid must be at least 2x2");
    AuditReport report;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const Point p{region.xmin + (region.xmax - region.xmin) * static_cast<double>(i) / static_cast<double>(nx - 1),
                          region.ymin + (region.ymax - region.ymin) * static_cast<double>(j) / static_cast<double>(ny - 1)};
            const double m = f(p).magnitude();
            if (m < report.minimum) {
                report.minimum = m;
                report.location = p;
            }
        }
    }
    report.pass = report.minimum >= threshold;
    return report;
}

inline AuditReport nonvanishing_audit(const VectorField& field, Rect region, std::size_t nx, std::size_t ny,
                                      double threshold) {
    return magnitude_audit(field.eval, region, nx, ny, threshold);
}

/// Minimum displacement |h(p) - p| over a grid.
inline AuditReport displacement_audit(const PlanarMap& map, Rect region, std::size_t nx, std::size_t ny,
                                      double threshold) {
    return magnitude_audit([&map](Point p) { return map(p) - p; }, region, nx, ny, threshold);
}

}  // namespace brouwer
