#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <tuple>
#include <stdexcept>
#include <utility>
#include <vector>

#include "brouwer/errors.hpp"
#include "brouwer/flows.hpp"
#include "brouwer/geometry.hpp"
#include "brouwer/rational.hpp"

namespace brouwer {

struct WindingOptions {
    std::size_t initial_samples = 128;
    std::size_t max_samples = 1 << 20;
    double fixed_point_threshold = 1e-6;
    double snap_tolerance = 0.02;
    std::int64_t snap_denominator = 2;  // open curves; closed curves always snap to integers

    void validate() const {
        if (initial_samples < 8) throw std::invalid_argument("initial_samples must be >= 8");
        if (max_samples < initial_samples) throw std::invalid_argument("max_samples must be >= initial_samples");
        if (!(fixed_point_threshold > 0.0) || !(snap_tolerance > 0.0))
            throw std::invalid_argument("winding thresholds must be positive");
        if (snap_denominator < 1) throw std::invalid_argument("snap_denominator must be >= 1");
    }
};

struct WindingResult {
    double raw = 0.0;
    std::optional<Rational> snapped;
    std::size_t samples_used = 0;
    double min_vector_magnitude = std::numeric_limits<double>::infinity();
    std::size_t refinement_rounds = 0;
    double start_angle = 0.0;  // atan2 of the first sample
    double end_angle = 0.0;    // lifted angle of the last sample
};

/// Winding of s -> f(curve(s)) with adaptive bisection: an interval is split while its end
/// directions differ by pi/2 or more.
inline WindingResult winding_along(const std::function<Vector(Point)>& f, const Curve& curve,
                                   const WindingOptions& opts = {}) {
    opts.validate();
    WindingResult result;

    std::vector<double> params;
    for (std::size_t i = 0; i < opts.initial_samples; ++i)
        params.push_back(static_cast<double>(i) / static_cast<double>(opts.initial_samples - 1));
    for (double b : curve.breakpoints()) params.push_back(b);
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    std::size_t samples = 0;
    auto sample = [&](double s) {
        const Vector v = f(curve.at(s));
        ++samples;
        const double m = v.magnitude();
        if (!std::isfinite(m)) throw NonFiniteState("non-finite vector on curve");
        if (m < opts.fixed_point_threshold) throw FixedPointOnCurve(s, m);
        result.min_vector_magnitude = std::min(result.min_vector_magnitude, m);
        return v;
    };

    std::vector<std::pair<double, Vector>> accepted;
    accepted.emplace_back(params[0], sample(params[0]));
    std::size_t depth_max = 0;
    for (std::size_t i = 1; i < params.size(); ++i) {
        // stack of pending right endpoints, processed left to right
        std::vector<std::tuple<double, Vector, std::size_t>> pending{{params[i], sample(params[i]), 0}};
        while (!pending.empty()) {
            auto [s1, v1, depth] = pending.back();
            const auto& [s0, v0] = accepted.back();
            if (std::abs(turn_angle(v0, v1)) < kPi / 2) {
                accepted.emplace_back(s1, v1);
                pending.pop_back();
                continue;
            }
            if (samples >= opts.max_samples || s1 - s0 < 1e-15) throw RefinementExhausted(samples);
            const double mid = 0.5 * (s0 + s1);
            pending.emplace_back(mid, sample(mid), depth + 1);
            depth_max = std::max(depth_max, depth + 1);
        }
    }

    double lifted = accepted.front().second.angle();
    result.start_angle = lifted;
    for (std::size_t i = 1; i < accepted.size(); ++i) lifted += turn_angle(accepted[i - 1].second, accepted[i].second);
    result.end_angle = lifted;
    result.raw = (lifted - result.start_angle) / kTwoPi;
    result.samples_used = samples;
    result.refinement_rounds = depth_max;

    const std::int64_t denominator = curve.closed() ? 1 : opts.snap_denominator;
    try {
        result.snapped = snap_to_fraction(result.raw, denominator, opts.snap_tolerance);
    } catch (const SnapFailure&) {
        result.snapped.reset();
    }
    return result;
}

/// Winding of the field along the curve.
inline WindingResult field_winding(const VectorField& field, const Curve& curve, const WindingOptions& opts = {}) {
    return winding_along(field.eval, curve, opts);
}

/// Winding of the displacement x -> map(x) - x along the curve.
inline WindingResult displacement_winding(const PlanarMap& map, const Curve& curve, const WindingOptions& opts = {}) {
    return winding_along([&map](Point p) { return map(p) - p; }, curve, opts);
}

/// Poincare-Hopf index: integer winding of the field around a counterclockwise circle.
inline Rational hopf_index(const VectorField& field, Point center, double radius, const WindingOptions& opts = {}) {
    const auto r = field_winding(field, Curve::circle(center, radius), opts);
    if (!r.snapped) {
        const double nearest = std::round(r.raw);
        throw SnapFailure(r.raw, nearest, std::abs(r.raw - nearest));
    }
    return *r.snapped;
}

}  // namespace brouwer
