#pragma once

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "brouwer/errors.hpp"
#include "brouwer/models.hpp"

namespace brouwer {

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_double(const std::string& s, const std::string& context) {
    if (s.empty()) throw SpecParseError("empty number in '" + context + "'");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v))
        throw SpecParseError("bad number '" + s + "' in '" + context + "'");
    return v;
}

inline int parse_sign(const std::string& s, const std::string& context) {
    if (s == "+" || s == "+1") return 1;
    if (s == "-" || s == "-1") return -1;
    throw SpecParseError("expected + or - in '" + context + "', got '" + s + "'");
}

}  // namespace detail

/// Model ids:
///   translation | reeb | pocket | psi0 | twist1 | twist2
///   stack:S,S,...        S = R+ | R- | T+ | T-   (Reeb turn or translation direction)
///   parallel:d,d,...     d = + | -
///   dehn:cx,cy,r0,r1     T conjugated by the Dehn twist about (cx, cy)
inline ModelHandle make_model(const std::string& id) {
    if (id == "translation") return make_translation();
    if (id == "reeb") return make_reeb_flow();
    if (id == "pocket") return make_pocket_flow();
    if (id == "psi0") return make_psi0();
    if (id == "twist1") return make_twists().first;
    if (id == "twist2") return make_twists().second;

    const auto colon = id.find(':');
    if (colon == std::string::npos) throw ModelNotFound("unknown model '" + id + "'");
    const std::string head = id.substr(0, colon);
    const auto args = detail::split(std::string_view(id).substr(colon + 1), ',');

    if (head == "stack") {
        std::vector<StripDescriptor> strips;
        for (const auto& a : args) {
            if (a.size() != 2 || (a[0] != 'R' && a[0] != 'T')) throw SpecParseError("bad strip '" + a + "' in '" + id + "'");
            const int sign = detail::parse_sign(a.substr(1), id);
            strips.push_back(a[0] == 'R' ? reeb_strip(sign) : translation_strip(sign));
        }
        return make_stack(strips);
    }
    if (head == "parallel") {
        std::vector<int> dirs;
        for (const auto& a : args) dirs.push_back(detail::parse_sign(a, id));
        if (dirs.size() < 2) throw SpecParseError("parallel needs at least two directions");
        return make_parallel_flow(dirs);
    }
    if (head == "dehn") {
        if (args.size() != 4) throw SpecParseError("dehn needs cx,cy,r0,r1");
        const double cx = detail::parse_double(args[0], id), cy = detail::parse_double(args[1], id);
        const double r0 = detail::parse_double(args[2], id), r1 = detail::parse_double(args[3], id);
        if (!(0.0 < r0 && r0 < r1)) throw SpecParseError("dehn radii must satisfy 0 < r0 < r1");
        return make_dehn_conjugate({cx, cy}, r0, r1);
    }
    throw ModelNotFound("unknown model family '" + head + "'");
}

inline std::vector<std::string> example_model_ids() {
    return {"translation", "reeb", "stack:R+,R+", "stack:R+,R-", "parallel:+,+,-", "pocket", "dehn:0.5,2,0.6,0.9", "psi0",
            "twist1", "twist2"};
}

}  // namespace brouwer
