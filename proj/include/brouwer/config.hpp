#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "brouwer/errors.hpp"
#include "brouwer/geometry.hpp"
#include "brouwer/models.hpp"
#include "brouwer/rational.hpp"

namespace brouwer {

enum class EndType { Backward, Forward };

struct StreamlineSlots {
    int backward = 0;
    int forward = 0;
};

/// Ends of r streamlines as slots 0..2r-1 in counterclockwise order at infinity.
class StreamlineConfig {
public:
    explicit StreamlineConfig(std::vector<StreamlineSlots> lines) : lines_(std::move(lines)) {
        if (lines_.empty()) throw std::invalid_argument("configuration needs at least one streamline");
        std::vector<int> used(2 * lines_.size(), 0);
        for (const auto& l : lines_) {
            for (int s : {l.backward, l.forward}) {
                if (s < 0 || s >= static_cast<int>(used.size())) throw std::invalid_argument("slot out of range");
                if (used[static_cast<std::size_t>(s)]++) throw std::invalid_argument("slot used twice");
            }
        }
    }

    [[nodiscard]] std::size_t size() const { return lines_.size(); }
    [[nodiscard]] int slot_count() const { return static_cast<int>(2 * lines_.size()); }
    [[nodiscard]] const StreamlineSlots& line(std::size_t i) const { return lines_.at(i); }
    [[nodiscard]] const std::vector<StreamlineSlots>& lines() const { return lines_; }

    /// (streamline id, end type) at each slot.
    [[nodiscard]] std::vector<std::pair<std::size_t, EndType>> cyclic_sequence() const {
        std::vector<std::pair<std::size_t, EndType>> seq(2 * lines_.size());
        for (std::size_t i = 0; i < lines_.size(); ++i) {
            seq[static_cast<std::size_t>(lines_[i].backward)] = {i, EndType::Backward};
            seq[static_cast<std::size_t>(lines_[i].forward)] = {i, EndType::Forward};
        }
        return seq;
    }

    /// Same lines with the cyclic order reversed.
    [[nodiscard]] StreamlineConfig mirrored() const {
        auto out = lines_;
        const int n = slot_count();
        for (auto& l : out) {
            l.backward = (n - l.backward) % n;
            l.forward = (n - l.forward) % n;
        }
        return StreamlineConfig(out);
    }

    /// Slot labels shifted by k.
    [[nodiscard]] StreamlineConfig rotated(int k) const {
        auto out = lines_;
        const int n = slot_count();
        for (auto& l : out) {
            l.backward = ((l.backward + k) % n + n) % n;
            l.forward = ((l.forward + k) % n + n) % n;
        }
        return StreamlineConfig(out);
    }

    /// Streamline i with its orientation reversed.
    [[nodiscard]] StreamlineConfig reversed(std::size_t i) const {
        auto out = lines_;
        std::swap(out.at(i).backward, out.at(i).forward);
        return StreamlineConfig(out);
    }

    [[nodiscard]] StreamlineConfig restricted(std::vector<std::size_t> ids) const {
        std::vector<std::pair<int, std::pair<std::size_t, EndType>>> kept;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            kept.push_back({lines_.at(ids[k]).backward, {k, EndType::Backward}});
            kept.push_back({lines_.at(ids[k]).forward, {k, EndType::Forward}});
        }
        std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<StreamlineSlots> out(ids.size());
        for (std::size_t s = 0; s < kept.size(); ++s) {
            auto& l = out[kept[s].second.first];
            (kept[s].second.second == EndType::Backward ? l.backward : l.forward) = static_cast<int>(s);
        }
        return StreamlineConfig(out);
    }

    friend bool operator==(const StreamlineConfig& a, const StreamlineConfig& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.lines_[i].backward != b.lines_[i].backward || a.lines_[i].forward != b.lines_[i].forward) return false;
        return true;
    }

private:
    std::vector<StreamlineSlots> lines_;
};

// ---------------------------------------------------------------------------
// Geometry to slots

struct PolylineEnds {
    std::vector<Point> polyline;  // backward end first
    double backward_angle = 0.0;
    double forward_angle = 0.0;
};

namespace detail {

inline double normalized_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

inline double orient(Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

inline bool segments_cross(Point a, Point b, Point c, Point d) {
    const double d1 = orient(c, d, a), d2 = orient(c, d, b), d3 = orient(a, b, c), d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    auto on = [](Point p, Point q, Point r) {
        return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
    };
    return (d1 == 0 && on(c, d, a)) || (d2 == 0 && on(c, d, b)) || (d3 == 0 && on(a, b, c)) || (d4 == 0 && on(a, b, d));
}

inline bool polylines_cross(const std::vector<Point>& p, const std::vector<Point>& q) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double xmin = std::min(p[i].x, p[i + 1].x), xmax = std::max(p[i].x, p[i + 1].x);
        const double ymin = std::min(p[i].y, p[i + 1].y), ymax = std::max(p[i].y, p[i + 1].y);
        for (std::size_t j = 0; j + 1 < q.size(); ++j) {
            if (std::max(q[j].x, q[j + 1].x) < xmin || std::min(q[j].x, q[j + 1].x) > xmax) continue;
            if (std::max(q[j].y, q[j + 1].y) < ymin || std::min(q[j].y, q[j + 1].y) > ymax) continue;
            if (segments_cross(p[i], p[i + 1], q[j], q[j + 1])) return true;
        }
    }
    return false;
}

}  // namespace detail

/// Sorts the 2r ends counterclockwise: by asymptotic angle, then ends sharing an angle by their
/// offset -sin(a) x + cos(a) y at the polyline endpoint.
inline StreamlineConfig config_from_polylines(const std::vector<PolylineEnds>& lines, double angle_tol = 1e-9) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].polyline.size() < 2) throw std::invalid_argument("streamline polyline needs 2 points");
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (detail::polylines_cross(lines[i].polyline, lines[j].polyline)) throw CrossingPolylines(i, j);
    }
    struct End {
        double angle;
        double offset;
        std::size_t id;
        EndType type;
    };
    std::vector<End> ends;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& l = lines[i];
        for (auto [a, p, t] : {std::tuple{l.backward_angle, l.polyline.front(), EndType::Backward},
                               std::tuple{l.forward_angle, l.polyline.back(), EndType::Forward}}) {
            double na = detail::normalized_angle(a);
            if (kTwoPi - na < angle_tol) na = 0.0;
            ends.push_back({na, -std::sin(na) * p.x + std::cos(na) * p.y, i, t});
        }
    }
    std::sort(ends.begin(), ends.end(), [&](const End& a, const End& b) {
        if (std::abs(a.angle - b.angle) > angle_tol) return a.angle < b.angle;
        return a.offset < b.offset;
    });
    for (std::size_t k = 0; k < ends.size(); ++k) {
        const auto& a = ends[k];
        const auto& b = ends[(k + 1) % ends.size()];
        if (std::abs(a.angle - b.angle) <= angle_tol && a.offset == b.offset && ends.size() > 1)
            throw CoincidentEndDirections("two streamline ends share direction and offset");
    }
    std::vector<StreamlineSlots> slots(lines.size());
    for (std::size_t k = 0; k < ends.size(); ++k)
        (ends[k].type == EndType::Backward ? slots[ends[k].id].backward : slots[ends[k].id].forward) = static_cast<int>(k);
    return StreamlineConfig(slots);
}

inline PolylineEnds polyline_ends(const Streamline& s) { return {s.polyline, s.backward_angle, s.forward_angle}; }

/// Configuration of the declared orbits `ids` of a model; every one must carry a streamline.
inline StreamlineConfig config_from_model(const ModelHandle& h, const std::vector<std::size_t>& ids) {
    std::vector<PolylineEnds> lines;
    for (auto i : ids) {
        const auto& o = h.orbits.at(i);
        if (!o.streamline) throw UnsupportedConfiguration("orbit " + std::to_string(i) + " has no streamline");
        lines.push_back(polyline_ends(*o.streamline));
    }
    return config_from_polylines(lines);
}

// ---------------------------------------------------------------------------
// Separation and triple verdicts

namespace detail {

/// Strictly between a and b going counterclockwise from a.
inline bool in_arc(int a, int b, int s, int n) {
    const int len = ((b - a) % n + n) % n;
    const int pos = ((s - a) % n + n) % n;
    return pos > 0 && pos < len;
}

}  // namespace detail

/// True iff the slots of i cut the circle into two arcs holding j and k respectively.
inline bool separates(const StreamlineConfig& c, std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || i == k) throw std::invalid_argument("separates needs three distinct ids");
    const int n = c.slot_count();
    const auto& li = c.line(i);
    auto side = [&](std::size_t id) {
        const bool b = detail::in_arc(li.backward, li.forward, c.line(id).backward, n);
        const bool f = detail::in_arc(li.backward, li.forward, c.line(id).forward, n);
        return b == f ? std::optional<bool>(b) : std::nullopt;
    };
    const auto sj = side(j), sk = side(k);
    return sj && sk && *sj != *sk;
}

struct TripleVerdict {
    enum class Kind { Separating, NonSeparating };
    Kind kind = Kind::Separating;
    std::size_t separator = 0;  // Separating
    int sign = 1;               // NonSeparating

    [[nodiscard]] std::string str() const {
        if (kind == Kind::Separating) return "Separating{" + std::to_string(separator) + "}";
        return std::string("NonSeparating{") + (sign > 0 ? "+1" : "-1") + "}";
    }
};

namespace detail {

/// Streamline ids in cyclic order with each adjacent pair collapsed; empty unless every
/// streamline's two ends are adjacent.
inline std::vector<std::size_t> collapsed_pairs(const StreamlineConfig& c) {
    const auto seq = c.cyclic_sequence();
    const std::size_t n = seq.size();
    // start at a slot whose predecessor belongs to another streamline
    std::size_t start = 0;
    while (start < n && seq[(start + n - 1) % n].first == seq[start].first) ++start;
    if (start == n) return {};
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n; k += 2) {
        const auto a = seq[(start + k) % n].first, b = seq[(start + k + 1) % n].first;
        if (a != b) return {};
        out.push_back(a);
    }
    return out;
}

}  // namespace detail

/// Separating when one line separates the other two. Otherwise the ends must come in adjacent
/// pairs; the sign is +1 when the pairs run 0, 1, 2 counterclockwise and -1 for the mirror order.
inline TripleVerdict triple_verdict(const StreamlineConfig& c) {
    if (c.size() != 3) throw UnsupportedConfiguration("triple_verdict needs three streamlines");
    for (std::size_t i = 0; i < 3; ++i)
        if (separates(c, i, (i + 1) % 3, (i + 2) % 3)) return {TripleVerdict::Kind::Separating, i, 0};
    const auto ids = detail::collapsed_pairs(c);
    if (ids.size() != 3) throw UnsupportedConfiguration("streamline ends interleave");
    std::size_t zero = 0;
    while (ids[zero] != 0) ++zero;
    const int sign = ids[(zero + 1) % 3] == 1 ? 1 : -1;
    return {TripleVerdict::Kind::NonSeparating, 0, sign};
}

inline Rational predicted_triple_sum(const TripleVerdict& v) {
    return v.kind == TripleVerdict::Kind::Separating ? Rational(0) : Rational(v.sign, 2);
}

/// Per-pair corrections for the symmetric tripod; negated for the mirror.
inline std::array<Rational, 3> tripod_corrections(int sign = 1) {
    const Rational c(sign > 0 ? 1 : -1, 6);
    return {c, c, c};
}

// ---------------------------------------------------------------------------
// Classification

enum class TwoOrbitClass { T, TInverse, R, RInverse };

inline std::string to_string(TwoOrbitClass c) {
    switch (c) {
        case TwoOrbitClass::T: return "T";
        case TwoOrbitClass::TInverse: return "T^-1";
        case TwoOrbitClass::R: return "R";
        case TwoOrbitClass::RInverse: return "R^-1";
    }
    return "?";
}

namespace detail {

/// Whether line j lies on the left of line i: in the counterclockwise arc from f_i to b_i.
inline bool left_of(const StreamlineConfig& c, std::size_t i, std::size_t j) {
    const auto& li = c.line(i);
    return in_arc(li.forward, li.backward, c.line(j).forward, c.slot_count());
}

/// Same sense: walking the circle from one end of line 0, the next end met has the same type.
inline bool same_sense(const StreamlineConfig& two) {
    const auto seq = two.cyclic_sequence();
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const auto& a = seq[k];
        const auto& b = seq[(k + 1) % seq.size()];
        if (a.first != b.first) {
            // pattern i_a, j_b, j_c, i_d
            return a.second == b.second;
        }
    }
    throw UnsupportedConfiguration("degenerate two-line configuration");
}

}  // namespace detail

/// T-type when both lines run in the same sense, R-type otherwise. Within a type, T (resp. R) has
/// line 1 on the left of line 0 (resp. each line on the left of the other).
inline TwoOrbitClass classify_two_orbit(const StreamlineConfig& c) {
    if (c.size() != 2) throw UnsupportedConfiguration("classify_two_orbit needs two streamlines");
    if (detail::collapsed_pairs(c).empty()) throw UnsupportedConfiguration("streamline ends interleave");
    const bool l10 = detail::left_of(c, 0, 1), l01 = detail::left_of(c, 1, 0);
    if (l10 && l01) return TwoOrbitClass::R;
    if (!l10 && !l01) return TwoOrbitClass::RInverse;
    return l10 ? TwoOrbitClass::T : TwoOrbitClass::TInverse;
}

/// Conjugacy classes of {T, T^-1, R, R^-1}: T and T^-1 are conjugate, R and R^-1 are not.
inline std::vector<std::vector<TwoOrbitClass>> two_orbit_conjugacy_classes() {
    return {{TwoOrbitClass::T, TwoOrbitClass::TInverse}, {TwoOrbitClass::R}, {TwoOrbitClass::RInverse}};
}

inline bool conjugate_classes(TwoOrbitClass a, TwoOrbitClass b) {
    for (const auto& cls : two_orbit_conjugacy_classes())
        if (std::find(cls.begin(), cls.end(), a) != cls.end()) return std::find(cls.begin(), cls.end(), b) != cls.end();
    return false;
}

enum class ThreeOrbitClass {
    Parallel,          // three lines in the same sense
    OneReeb,           // separating, one outer line against the middle one
    TwoReeb,           // separating, middle line against both outer ones
    NonSeparatingCoherent,
    NonSeparatingMixed
};

inline std::string to_string(ThreeOrbitClass c) {
    switch (c) {
        case ThreeOrbitClass::Parallel: return "parallel";
        case ThreeOrbitClass::OneReeb: return "one-reeb";
        case ThreeOrbitClass::TwoReeb: return "two-reeb";
        case ThreeOrbitClass::NonSeparatingCoherent: return "nonseparating-coherent";
        case ThreeOrbitClass::NonSeparatingMixed: return "nonseparating-mixed";
    }
    return "?";
}

inline int diagram_number(ThreeOrbitClass c) { return static_cast<int>(c) + 1; }

inline ThreeOrbitClass classify_three_orbit(const StreamlineConfig& c) {
    const auto v = triple_verdict(c);
    if (v.kind == TripleVerdict::Kind::Separating) {
        const std::size_t m = v.separator, a = (m + 1) % 3, b = (m + 2) % 3;
        const bool sa = detail::same_sense(c.restricted({m, a}));
        const bool sb = detail::same_sense(c.restricted({m, b}));
        if (sa && sb) return ThreeOrbitClass::Parallel;
        if (!sa && !sb) return ThreeOrbitClass::TwoReeb;
        return ThreeOrbitClass::OneReeb;
    }
    // coherent when every streamline meets its two ends in the same order going counterclockwise
    const auto seq = c.cyclic_sequence();
    const std::size_t n = seq.size();
    std::optional<EndType> first;
    for (std::size_t k = 0; k < n; ++k) {
        if (seq[k].first != seq[(k + 1) % n].first) continue;
        if (!first) first = seq[k].second;
        else if (*first != seq[k].second) return ThreeOrbitClass::NonSeparatingMixed;
    }
    return ThreeOrbitClass::NonSeparatingCoherent;
}

// ---------------------------------------------------------------------------
// Text form: "streamlines r" then one "id backward forward" line per streamline.

inline std::string serialize(const StreamlineConfig& c) {
    std::ostringstream out;
    out << "streamlines " << c.size() << "\n";
    for (std::size_t i = 0; i < c.size(); ++i) out << i << " " << c.line(i).backward << " " << c.line(i).forward << "\n";
    return out.str();
}

inline StreamlineConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    std::size_t r = 0;
    if (!(in >> word >> r) || word != "streamlines" || r == 0) throw SpecParseError("expected 'streamlines <r>'");
    std::vector<StreamlineSlots> lines(r);
    std::vector<bool> seen(r, false);
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t id = 0;
        int b = 0, f = 0;
        if (!(in >> id >> b >> f) || id >= r || seen[id]) throw SpecParseError("bad streamline record");
        seen[id] = true;
        lines[id] = {b, f};
    }
    try {
        return StreamlineConfig(lines);
    } catch (const std::invalid_argument& e) {
        throw SpecParseError(e.what());
    }
}

}  // namespace brouwer
