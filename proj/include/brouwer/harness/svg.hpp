#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "brouwer/flows.hpp"
#include "brouwer/geometry.hpp"

namespace brouwer::harness {

struct SvgPath {
    std::vector<Point> points;
    std::string color = "#1f4e9c";
    bool arrows = true;
};

struct SvgMarker {
    Point at;
    std::string color = "#c0392b";
};

struct SvgLabel {
    Point at;
    std::string text;
};

struct Scene {
    Rect viewport{-5, 5, -1, 4};
    std::vector<SvgPath> streamlines;
    std::vector<SvgPath> curves;
    std::vector<SvgMarker> markers;
    std::vector<SvgLabel> labels;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Fixed 800 px wide canvas, y up. Output depends only on the scene.
inline std::string render_svg(const Scene& scene) {
    const Rect& v = scene.viewport;
    const double width = 800.0;
    const double scale = width / (v.xmax - v.xmin);
    const double height = std::ceil((v.ymax - v.ymin) * scale);
    auto px = [&](Point p) { return Point{(p.x - v.xmin) * scale, height - (p.y - v.ymin) * scale}; };
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  width, height, width, height);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes, when they cross the viewport
    if (v.ymin <= 0 && 0 <= v.ymax) {
        const Point a = px({v.xmin, 0}), b = px({v.xmax, 0});
        std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\" stroke-width=\"1\"/>\n",
                      a.x, a.y, b.x, b.y);
        out += buf;
    }
    if (v.xmin <= 0 && 0 <= v.xmax) {
        const Point a = px({0, v.ymin}), b = px({0, v.ymax});
        std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\" stroke-width=\"1\"/>\n",
                      a.x, a.y, b.x, b.y);
        out += buf;
    }

    auto path = [&](const SvgPath& p, const char* extra) {
        if (p.points.size() < 2) return;
        std::string d;
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            const Point q = px(p.points[i]);
            std::snprintf(buf, sizeof buf, "%s%.2f %.2f", i ? " L" : "M", q.x, q.y);
            d += buf;
        }
        out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + p.color + "\" stroke-width=\"2\"" + extra + "/>\n";
        if (!p.arrows) return;
        // arrowhead at the visible midpoint, pointing along the path
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
            const Point q = p.points[i];
            if (q.x >= v.xmin && q.x <= v.xmax && q.y >= v.ymin && q.y <= v.ymax) inside.push_back(i);
        }
        if (inside.empty()) return;
        const std::size_t i = inside[inside.size() / 2];
        const Point a = px(p.points[i]), b = px(p.points[i + 1]);
        const Vector dir = b - a;
        const double len = dir.magnitude();
        if (len == 0.0) return;
        const Vector u{dir.dx / len, dir.dy / len}, n{-u.dy, u.dx};
        const Point tip = a + 6.0 * u, l = a + (-6.0) * u + 5.0 * n, r = a + (-6.0) * u + (-5.0) * n;
        std::snprintf(buf, sizeof buf, "<polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\" fill=\"%s\"/>\n", tip.x, tip.y,
                      l.x, l.y, r.x, r.y, p.color.c_str());
        out += buf;
    };
    for (const auto& s : scene.streamlines) path(s, "");
    for (const auto& c : scene.curves) path(c, " stroke-dasharray=\"6 4\"");
    for (const auto& m : scene.markers) {
        const Point q = px(m.at);
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", q.x, q.y, m.color.c_str());
        out += buf;
    }
    for (const auto& l : scene.labels) {
        const Point q = px(l.at);
        std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"16\">", q.x, q.y);
        out += buf + detail::xml_escape(l.text) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace brouwer::harness
