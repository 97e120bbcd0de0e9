#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "brouwer/errors.hpp"
#include "brouwer/flows.hpp"
#include "brouwer/geometry.hpp"
#include "brouwer/models.hpp"
#include "brouwer/registry.hpp"
#include "brouwer/winding.hpp"

namespace brouwer::harness {

inline const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds{"index", "triple", "sweep", "audit", "classify", "render", "verify"};
    return kinds;
}

/// One experiment. Every field has a default, so an empty scenario plus CLI flags is enough.
struct ScenarioSpec {
    std::string experiment = "index";
    std::string model = "translation";
    std::vector<std::string> orbits;  // "x,y" base points or "#k" declared orbit k
    std::vector<std::string> curves;  // "x1,y1;x2,y2;..."
    std::optional<std::size_t> samples;
    std::optional<double> snap_tol;
    std::uint64_t seed = 1;
    std::size_t sweep_curves = 20;
    std::string level = "quick";
    std::string out;
    std::string svg;
    std::string format = "csv";
    std::optional<Rect> viewport;

    [[nodiscard]] WindingOptions winding() const {
        WindingOptions o;
        if (samples) o.initial_samples = *samples;
        if (snap_tol) o.snap_tolerance = *snap_tol;
        try {
            o.validate();
        } catch (const std::invalid_argument& e) {
            throw SpecParseError(e.what());
        }
        return o;
    }

    void validate() const {
        bool known = false;
        for (const auto& k : experiment_kinds()) known = known || k == experiment;
        if (!known) throw SpecParseError("unknown experiment '" + experiment + "'");
        if (format != "csv" && format != "text") throw SpecParseError("format must be csv or text");
        if (level != "quick" && level != "full") throw SpecParseError("level must be quick or full");
        if (sweep_curves < 2) throw SpecParseError("sweep needs at least 2 curves");
        (void)winding();
    }
};

/// "2.5", "-1e-3", "pi", "0.5pi", "-3pi/2" style numbers.
inline double parse_coordinate(std::string s) {
    const auto trim = [](std::string& t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    };
    trim(s);
    double divisor = 1.0;
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        divisor = brouwer::detail::parse_double(s.substr(slash + 1), s);
        if (divisor == 0.0) throw SpecParseError("division by zero in '" + s + "'");
        s = s.substr(0, slash);
    }
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        std::string k = s.substr(0, s.size() - 2);
        if (k.empty() || k == "+") return kPi / divisor;
        if (k == "-") return -kPi / divisor;
        return brouwer::detail::parse_double(k, s) * kPi / divisor;
    }
    return brouwer::detail::parse_double(s, s) / divisor;
}

inline Point parse_point(const std::string& text) {
    const auto parts = brouwer::detail::split(text, ',');
    if (parts.size() != 2) throw SpecParseError("expected 'x,y', got '" + text + "'");
    return {parse_coordinate(parts[0]), parse_coordinate(parts[1])};
}

inline Curve parse_curve(const std::string& text) {
    std::vector<Point> pts;
    for (const auto& p : brouwer::detail::split(text, ';')) pts.push_back(parse_point(p));
    try {
        return Curve::polyline(pts);
    } catch (const std::invalid_argument& e) {
        throw SpecParseError("bad curve '" + text + "': " + e.what());
    }
}

struct ResolvedOrbit {
    Point base;
    std::optional<std::size_t> declared;
    std::string label;
};

/// "#k" picks declared orbit k; a point matching a declared base picks that orbit too.
inline ResolvedOrbit resolve_orbit(const ModelHandle& h, const std::string& selector) {
    if (!selector.empty() && selector.front() == '#') {
        std::size_t k = 0;
        try {
            k = std::stoul(selector.substr(1));
        } catch (const std::logic_error&) {
            throw SpecParseError("bad orbit selector '" + selector + "'");
        }
        if (k >= h.orbits.size()) throw SpecParseError("model " + h.id + " has no declared orbit " + selector);
        return {h.orbits[k].base, k, selector};
    }
    const Point p = parse_point(selector);
    for (std::size_t k = 0; k < h.orbits.size(); ++k)
        if (distance(h.orbits[k].base, p) < 1e-9) return {h.orbits[k].base, k, selector};
    return {p, std::nullopt, selector};
}

namespace json_util {

template <class T>
T get(const nlohmann::json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SpecParseError(where + "." + key + ": " + e.what());
    }
}

inline void only_keys(const nlohmann::json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) throw SpecParseError(where + " must be an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : keys) ok = ok || item.key() == k;
        if (!ok) throw SpecParseError("unknown key '" + item.key() + "' in " + where);
    }
}

}  // namespace json_util

/// Scenario files are JSON objects:
///   { "experiment": "index", "model": "reeb", "orbits": ["0,1", "0,2"], "curves": ["0,1;0,2"],
///     "seed": 7, "winding": {"samples": 128, "snap_tol": 0.02}, "sweep": {"curves": 20},
///     "verify": {"level": "quick"}, "render": {"viewport": [xmin, xmax, ymin, ymax]},
///     "output": {"out": "report.csv", "svg": "scene.svg", "format": "csv"} }
inline ScenarioSpec parse_scenario(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecParseError(std::string("scenario is not valid JSON: ") + e.what());
    }
    json_util::only_keys(j, {"experiment", "model", "orbits", "curves", "seed", "winding", "sweep", "verify", "render", "output"},
                      "scenario");
    ScenarioSpec s;
    if (j.contains("experiment")) s.experiment = json_util::get<std::string>(j, "experiment", "scenario");
    if (j.contains("model")) s.model = json_util::get<std::string>(j, "model", "scenario");
    if (j.contains("orbits")) s.orbits = json_util::get<std::vector<std::string>>(j, "orbits", "scenario");
    if (j.contains("curves")) s.curves = json_util::get<std::vector<std::string>>(j, "curves", "scenario");
    if (j.contains("seed")) s.seed = json_util::get<std::uint64_t>(j, "seed", "scenario");
    if (j.contains("winding")) {
        const auto& w = j["winding"];
        json_util::only_keys(w, {"samples", "snap_tol"}, "winding");
        if (w.contains("samples")) s.samples = json_util::get<std::size_t>(w, "samples", "winding");
        if (w.contains("snap_tol")) s.snap_tol = json_util::get<double>(w, "snap_tol", "winding");
    }
    if (j.contains("sweep")) {
        json_util::only_keys(j["sweep"], {"curves"}, "sweep");
        if (j["sweep"].contains("curves")) s.sweep_curves = json_util::get<std::size_t>(j["sweep"], "curves", "sweep");
    }
    if (j.contains("verify")) {
        json_util::only_keys(j["verify"], {"level"}, "verify");
        if (j["verify"].contains("level")) s.level = json_util::get<std::string>(j["verify"], "level", "verify");
    }
    if (j.contains("render")) {
        json_util::only_keys(j["render"], {"viewport"}, "render");
        if (j["render"].contains("viewport")) {
            const auto v = json_util::get<std::vector<double>>(j["render"], "viewport", "render");
            if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) throw SpecParseError("viewport must be [xmin, xmax, ymin, ymax]");
            s.viewport = Rect{v[0], v[1], v[2], v[3]};
        }
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        json_util::only_keys(o, {"out", "svg", "format"}, "output");
        if (o.contains("out")) s.out = json_util::get<std::string>(o, "out", "output");
        if (o.contains("svg")) s.svg = json_util::get<std::string>(o, "svg", "output");
        if (o.contains("format")) s.format = json_util::get<std::string>(o, "format", "output");
    }
    s.validate();
    return s;
}

inline ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot read scenario '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace brouwer::harness
