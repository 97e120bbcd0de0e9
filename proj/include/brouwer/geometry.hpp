#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "brouwer/errors.hpp"

namespace brouwer {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vector {
    double dx = 0.0;
    double dy = 0.0;

    [[nodiscard]] double magnitude() const { return std::hypot(dx, dy); }
    [[nodiscard]] double angle() const { return std::atan2(dy, dx); }

    friend Vector operator+(Vector a, Vector b) { return {a.dx + b.dx, a.dy + b.dy}; }
    friend Vector operator-(Vector a, Vector b) { return {a.dx - b.dx, a.dy - b.dy}; }
    friend Vector operator*(double s, Vector v) { return {s * v.dx, s * v.dy}; }
    Vector operator-() const { return {-dx, -dy}; }
    friend bool operator==(const Vector&, const Vector&) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
    [[nodiscard]] double norm() const { return std::hypot(x, y); }

    friend Vector operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator+(Point p, Vector v) { return {p.x + v.dx, p.y + v.dy}; }
    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return (a - b).magnitude(); }

inline Point lerp(Point a, Point b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

/// Signed angle from a to b in (-pi, pi].
inline double turn_angle(Vector a, Vector b) {
    return std::atan2(a.dx * b.dy - a.dy * b.dx, a.dx * b.dx + a.dy * b.dy);
}

/// Continuous angle representative along a sampled vector sequence.
struct AngleLift {
    std::vector<double> params;
    std::vector<double> angles;

    /// (last - first) / 2pi.
    [[nodiscard]] double winding() const {
        return angles.empty() ? 0.0 : (angles.back() - angles.front()) / kTwoPi;
    }
};

/// Lifts atan2 continuously. Consecutive directions must differ by less than pi/2.
inline AngleLift lift_angles(std::span<const Vector> vectors, std::span<const double> params = {}) {
    AngleLift lift;
    lift.angles.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].magnitude() == 0.0) throw ZeroVectorError(i);
        if (i == 0) {
            lift.angles.push_back(vectors[0].angle());
            continue;
        }
        const double step = turn_angle(vectors[i - 1], vectors[i]);
        if (std::abs(step) >= kPi / 2) throw AmbiguousStepError(i);
        lift.angles.push_back(lift.angles.back() + step);
    }
    if (params.size() == vectors.size()) {
        lift.params.assign(params.begin(), params.end());
    } else {
        lift.params.resize(vectors.size());
        for (std::size_t i = 0; i < vectors.size(); ++i)
            lift.params[i] = vectors.size() > 1 ? static_cast<double>(i) / static_cast<double>(vectors.size() - 1) : 0.0;
    }
    return lift;
}

class Curve;
inline Curve subdivide(const Curve& curve, std::span<const int> splits);

/// Immutable parametrized path on [0,1]: either a polyline or an analytic evaluator
/// carrying a breakpoint grid. Refinement returns new curves.
class Curve {
public:
    using Evaluator = std::function<Point(double)>;

    static Curve polyline(std::vector<Point> points) {
        if (points.size() < 2) throw std::invalid_argument("polyline needs at least 2 points");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!points[i].finite()) throw std::invalid_argument("polyline point is not finite");
            if (i > 0 && points[i] == points[i - 1])
                throw std::invalid_argument("polyline has repeated consecutive points");
        }
        Curve c;
        c.points_ = std::make_shared<const std::vector<Point>>(std::move(points));
        return c;
    }

    static Curve segment(Point a, Point b) { return polyline({a, b}); }

    /// Grid defaults to {0, 1}.
    static Curve analytic(Evaluator f, std::string label = "analytic", std::vector<double> grid = {0.0, 1.0}) {
        if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0)
            throw std::invalid_argument("analytic grid must start at 0 and end at 1");
        Curve c;
        c.eval_ = std::make_shared<const Evaluator>(std::move(f));
        c.grid_ = std::make_shared<const std::vector<double>>(std::move(grid));
        c.label_ = std::move(label);
        return c;
    }

    /// Counterclockwise circle, closed.
    static Curve circle(Point center, double radius, double turns = 1.0) {
        return analytic(
            [center, radius, turns](double s) {
                if (s == 1.0 && turns == 1.0) return Point{center.x + radius, center.y};
                const double a = kTwoPi * turns * s;
                return Point{center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
            },
            "circle");
    }

    [[nodiscard]] bool is_polyline() const { return static_cast<bool>(points_); }

    [[nodiscard]] Point at(double s) const {
        if (points_) {
            const auto& pts = *points_;
            const double n = static_cast<double>(pts.size() - 1);
            if (s <= 0.0) return pts.front();
            if (s >= 1.0) return pts.back();
            const double u = s * n;
            const auto i = std::min(static_cast<std::size_t>(u), pts.size() - 2);
            return lerp(pts[i], pts[i + 1], u - static_cast<double>(i));
        }
        return (*eval_)(s);
    }

    [[nodiscard]] Point start() const { return at(0.0); }
    [[nodiscard]] Point end() const { return at(1.0); }
    [[nodiscard]] bool closed(double tol = 1e-12) const { return distance(start(), end()) <= tol; }

    /// Polyline vertices, or the analytic curve evaluated on its grid.
    [[nodiscard]] std::vector<Point> vertices() const {
        if (points_) return *points_;
        std::vector<Point> out;
        for (double s : *grid_) out.push_back(at(s));
        return out;
    }

    /// Parameters of the breakpoints (polyline vertices are equally spaced in parameter).
    [[nodiscard]] std::vector<double> breakpoints() const {
        if (grid_) return *grid_;
        std::vector<double> out;
        const auto n = points_->size() - 1;
        for (std::size_t i = 0; i <= n; ++i) out.push_back(static_cast<double>(i) / static_cast<double>(n));
        return out;
    }

    [[nodiscard]] std::size_t segment_count() const { return breakpoints().size() - 1; }

    [[nodiscard]] Curve reversed() const {
        if (points_) return polyline(std::vector<Point>(points_->rbegin(), points_->rend()));
        auto f = eval_;
        std::vector<double> grid;
        for (auto it = grid_->rbegin(); it != grid_->rend(); ++it) grid.push_back(1.0 - *it);
        grid.front() = 0.0;
        grid.back() = 1.0;
        return analytic([f](double s) { return (*f)(1.0 - s); }, label_ + "~", std::move(grid));
    }

    /// Unit tangent direction angle just after s (or just before, for s == 1).
    [[nodiscard]] double tangent_angle(double s) const {
        if (points_) {
            const auto& pts = *points_;
            const double n = static_cast<double>(pts.size() - 1);
            auto i = static_cast<std::size_t>(std::clamp(s, 0.0, 1.0) * n);
            if (i >= pts.size() - 1) i = pts.size() - 2;
            return (pts[i + 1] - pts[i]).angle();
        }
        constexpr double h = 1e-6;
        const double a = std::clamp(s - h, 0.0, 1.0 - 2 * h);
        return (at(a + 2 * h) - at(a)).angle();
    }

    /// Total signed turning of the tangent from s=0 to s=1. Polyline corners contribute their
    /// turn in (-pi, pi); analytic curves are differenced on a fine grid.
    [[nodiscard]] double total_turning() const {
        if (points_) {
            const auto& pts = *points_;
            double total = 0.0;
            for (std::size_t i = 1; i + 1 < pts.size(); ++i) total += turn_angle(pts[i] - pts[i - 1], pts[i + 1] - pts[i]);
            return total;
        }
        constexpr int n = 4096;
        double total = 0.0;
        Vector prev = at(1.0 / n) - at(0.0);
        for (int i = 1; i < n; ++i) {
            const Vector cur = at(static_cast<double>(i + 1) / n) - at(static_cast<double>(i) / n);
            total += turn_angle(prev, cur);
            prev = cur;
        }
        return total;
    }

    [[nodiscard]] const std::string& label() const { return label_; }

    [[nodiscard]] std::string describe() const {
        if (!points_) return label_;
        std::string out;
        char buf[64];
        for (const auto& p : *points_) {
            std::snprintf(buf, sizeof buf, "%s%.10g,%.10g", out.empty() ? "" : ";", p.x, p.y);
            out += buf;
        }
        return out;
    }

private:
    friend Curve subdivide(const Curve&, std::span<const int>);
    Curve() = default;

    std::shared_ptr<const std::vector<Point>> points_;
    std::shared_ptr<const Evaluator> eval_;
    std::shared_ptr<const std::vector<double>> grid_;
    std::string label_ = "polyline";
};

/// Splits breakpoint interval i into splits[i] equal pieces (a single count applies to all).
inline Curve subdivide(const Curve& curve, std::span<const int> splits) {
    const auto segments = curve.segment_count();
    auto count = [&](std::size_t i) {
        const int c = splits.size() == 1 ? splits[0] : splits[i];
        if (c < 1) throw std::invalid_argument("split counts must be >= 1");
        return c;
    };
    if (splits.size() != 1 && splits.size() != segments)
        throw std::invalid_argument("one split count per segment required");
    if (curve.is_polyline()) {
        const auto pts = curve.vertices();
        std::vector<Point> out{pts.front()};
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const int c = count(i);
            for (int k = 1; k < c; ++k) out.push_back(lerp(pts[i], pts[i + 1], static_cast<double>(k) / c));
            out.push_back(pts[i + 1]);
        }
        return Curve::polyline(std::move(out));
    }
    const auto grid = curve.breakpoints();
    std::vector<double> out{0.0};
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const int c = count(i);
        for (int k = 1; k < c; ++k) out.push_back(grid[i] + (grid[i + 1] - grid[i]) * k / c);
        out.push_back(grid[i + 1]);
    }
    Curve c = curve;
    c.grid_ = std::make_shared<const std::vector<double>>(std::move(out));
    return c;
}

inline Curve subdivide(const Curve& curve, int splits) {
    const int s[1] = {splits};
    return subdivide(curve, std::span<const int>(s));
}

/// a then b; requires a.end() == b.start() within tol.
inline Curve concatenate(const Curve& a, const Curve& b, double tol = 1e-12) {
    if (distance(a.end(), b.start()) > tol) throw std::invalid_argument("curves do not join");
    if (a.is_polyline() && b.is_polyline()) {
        auto pts = a.vertices();
        const auto rest = b.vertices();
        pts.insert(pts.end(), rest.begin() + 1, rest.end());
        return Curve::polyline(std::move(pts));
    }
    std::vector<double> grid;
    for (double s : a.breakpoints()) grid.push_back(0.5 * s);
    const auto gb = b.breakpoints();
    for (std::size_t i = 1; i < gb.size(); ++i) grid.push_back(0.5 + 0.5 * gb[i]);
    return Curve::analytic([a, b](double s) { return s <= 0.5 ? a.at(2 * s) : b.at(2 * s - 1); },
                           a.label() + "*" + b.label(), std::move(grid));
}

}  // namespace brouwer
