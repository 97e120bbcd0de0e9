#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace brouwer::harness {

/// One computed index. `snapped` is "p/q", or empty when snapping failed.
struct CaseRow {
    std::string model;
    std::string orbit_a;
    std::string orbit_b;
    std::string curve;
    double raw = 0.0;
    std::string snapped;
    std::size_t samples_used = 0;
    double min_displacement = 0.0;
    std::string status = "ok";
};

struct Verdict {
    std::string name;
    bool pass = true;
    std::string detail;
};

enum ExitCode { kOk = 0, kSpecError = 2, kComputationError = 3, kVerificationFailure = 4 };

struct Report {
    std::string experiment;
    std::string model;
    std::uint64_t seed = 0;
    std::vector<CaseRow> rows;
    std::vector<Verdict> verdicts;
    std::vector<std::string> notes;  // free text for the text format, e.g. a serialized configuration
    bool computation_error = false;
    double seconds = 0.0;
    std::string svg;

    [[nodiscard]] int exit_code() const {
        if (computation_error) return kComputationError;
        for (const auto& v : verdicts)
            if (!v.pass) return kVerificationFailure;
        return kOk;
    }
};

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string num(double v, const char* f = "%.12g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace detail

/// Rows, then verdicts as '#'-prefixed lines. No timing, so reruns are byte-identical.
inline std::string to_csv(const Report& r) {
    std::ostringstream out;
    out << "model,orbit_a,orbit_b,curve,raw,snapped,samples_used,min_displacement,status\n";
    for (const auto& c : r.rows) {
        out << detail::csv_field(c.model) << ',' << detail::csv_field(c.orbit_a) << ',' << detail::csv_field(c.orbit_b)
            << ',' << detail::csv_field(c.curve) << ',' << detail::num(c.raw) << ',' << c.snapped << ',' << c.samples_used
            << ',' << detail::num(c.min_displacement, "%.6g") << ',' << detail::csv_field(c.status) << '\n';
    }
    for (const auto& v : r.verdicts)
        out << "# verdict," << detail::csv_field(v.name) << ',' << (v.pass ? "PASS" : "FAIL") << ','
            << detail::csv_field(v.detail) << '\n';
    return out.str();
}

inline std::string to_text(const Report& r, bool with_timing = true) {
    std::ostringstream out;
    out << "experiment: " << r.experiment << "\nmodel: " << r.model << "\nseed: " << r.seed << "\n";
    for (const auto& c : r.rows) {
        out << "  I(" << c.orbit_a << " -> " << c.orbit_b << ") = " << (c.snapped.empty() ? "?" : c.snapped)
            << "  raw " << detail::num(c.raw, "%.9f");
        if (c.samples_used > 0) out << "  samples " << c.samples_used << "  min|d| " << detail::num(c.min_displacement, "%.3g");
        if (c.status != "ok") out << "  [" << c.status << "]";
        out << "\n    curve " << c.curve << "\n";
    }
    for (const auto& n : r.notes) out << n << (n.empty() || n.back() != '\n' ? "\n" : "");
    for (const auto& v : r.verdicts) out << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
    if (with_timing) out << "time: " << detail::num(r.seconds, "%.3f") << " s\n";
    return out.str();
}

}  // namespace brouwer::harness
