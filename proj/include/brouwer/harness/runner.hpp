#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "brouwer/acceptance.hpp"
#include "brouwer/config.hpp"
#include "brouwer/harness/report.hpp"
#include "brouwer/harness/scenario.hpp"
#include "brouwer/harness/svg.hpp"
#include "brouwer/models.hpp"
#include "brouwer/orbit_index.hpp"
#include "brouwer/registry.hpp"

namespace brouwer::harness {

namespace detail {

inline CaseRow row_from(const std::string& model, const ResolvedOrbit& a, const ResolvedOrbit& b,
                        const PairIndexResult& r) {
    CaseRow row;
    row.model = model;
    row.orbit_a = a.label;
    row.orbit_b = b.label;
    row.curve = r.curve_used.describe();
    row.raw = r.winding.raw;
    row.snapped = r.value.str();
    row.samples_used = r.winding.samples_used;
    row.min_displacement = r.winding.min_vector_magnitude;
    if (r.mode == IndexMode::Transported) row.status = "ok (transported)";
    return row;
}

inline CaseRow error_row(const std::string& model, const ResolvedOrbit& a, const ResolvedOrbit& b,
                         const std::string& curve, const std::exception& e) {
    CaseRow row;
    row.model = model;
    row.orbit_a = a.label;
    row.orbit_b = b.label;
    row.curve = curve;
    if (const auto* snap = dynamic_cast<const SnapFailure*>(&e)) row.raw = snap->value;
    row.status = std::string("error: ") + e.what();
    return row;
}

inline std::vector<ResolvedOrbit> resolve_orbits(const ModelHandle& h, const ScenarioSpec& spec, std::size_t needed) {
    std::vector<ResolvedOrbit> out;
    for (const auto& s : spec.orbits) out.push_back(resolve_orbit(h, s));
    for (std::size_t k = 0; out.size() < needed && k < h.orbits.size(); ++k) {
        bool used = false;
        for (const auto& o : out) used = used || (o.declared && *o.declared == k);
        if (!used) out.push_back({h.orbits[k].base, k, "#" + std::to_string(k)});
    }
    if (out.size() < needed)
        throw SpecParseError("experiment needs " + std::to_string(needed) + " orbits, got " + std::to_string(out.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (distance(out[i].base, out[j].base) < 1e-12) throw SpecParseError("orbit selectors coincide");
    return out;
}

inline PairIndexResult index_between(const ModelHandle& h, const ResolvedOrbit& a, const ResolvedOrbit& b,
                                     const std::optional<Curve>& curve, const WindingOptions& opts, std::uint64_t seed) {
    if (curve) return pair_index(h.map, a.base, b.base, curve, opts, seed);
    if (a.declared && b.declared) return pair_index(h, *a.declared, *b.declared, opts);
    if (h.connector) return curve_index(h.map, h.connect(a.base, b.base), opts);
    return pair_index(h.map, a.base, b.base, std::nullopt, opts, seed);
}

inline std::optional<StreamlineConfig> config_of(const ModelHandle& h, const std::vector<ResolvedOrbit>& orbits) {
    std::vector<std::size_t> ids;
    for (const auto& o : orbits) {
        if (!o.declared || !h.orbits[*o.declared].streamline) return std::nullopt;
        ids.push_back(*o.declared);
    }
    return config_from_model(h, ids);
}

}  // namespace detail

inline void run_index(const ScenarioSpec& spec, const ModelHandle& h, Report& report) {
    const auto opts = spec.winding();
    std::vector<ResolvedOrbit> orbits;
    std::vector<std::optional<Curve>> curves;
    if (!spec.curves.empty() && spec.orbits.empty()) {
        // orbits taken from each curve's endpoints
        for (const auto& text : spec.curves) {
            const auto c = parse_curve(text);
            curves.emplace_back(c);
        }
    } else {
        orbits = detail::resolve_orbits(h, spec, 2);
        for (const auto& text : spec.curves) curves.emplace_back(parse_curve(text));
        if (curves.empty()) curves.emplace_back(std::nullopt);
    }
    for (const auto& c : curves) {
        ResolvedOrbit a, b;
        if (orbits.empty()) {
            a = resolve_orbit(h, detail::num(c->start().x) + "," + detail::num(c->start().y));
            b = resolve_orbit(h, detail::num(c->end().x) + "," + detail::num(c->end().y));
        } else {
            a = orbits[0];
            b = orbits[1];
        }
        try {
            report.rows.push_back(detail::row_from(h.id, a, b, detail::index_between(h, a, b, c, opts, spec.seed)));
        } catch (const SpecParseError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw SpecParseError(e.what());
        } catch (const Error& e) {
            report.rows.push_back(detail::error_row(h.id, a, b, c ? c->describe() : "default", e));
            report.computation_error = true;
        }
    }
}

inline void run_triple(const ScenarioSpec& spec, const ModelHandle& h, Report& report) {
    const auto opts = spec.winding();
    const auto o = detail::resolve_orbits(h, spec, 3);
    Rational sum(0);
    bool complete = true;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& a = o[k];
        const auto& b = o[(k + 1) % 3];
        try {
            const auto r = detail::index_between(h, a, b, std::nullopt, opts, spec.seed);
            report.rows.push_back(detail::row_from(h.id, a, b, r));
            sum += r.value;
        } catch (const Error& e) {
            report.rows.push_back(detail::error_row(h.id, a, b, "default", e));
            report.computation_error = true;
            complete = false;
        }
    }
    if (!complete) return;
    report.verdicts.push_back({"quasi-additivity", abs(sum) <= Rational(1, 2), "sum " + sum.str()});
    if (const auto config = detail::config_of(h, {o[0], o[1], o[2]})) {
        const auto v = triple_verdict(*config);
        const auto predicted = predicted_triple_sum(v);
        report.verdicts.push_back(
            {"configuration", predicted == sum, v.str() + ", predicted " + predicted.str() + ", computed " + sum.str()});
    }
}

inline void run_sweep(const ScenarioSpec& spec, const ModelHandle& h, Report& report) {
    const auto opts = spec.winding();
    const auto o = detail::resolve_orbits(h, spec, 2);
    const auto audit = curve_independence_audit(h.map, o[0].base, o[1].base, spec.sweep_curves, spec.seed, h.window, 3, opts);
    for (const auto& c : audit.cases) {
        CaseRow row;
        row.model = h.id;
        row.orbit_a = o[0].label + "@" + std::to_string(c.n_a);
        row.orbit_b = o[1].label + "@" + std::to_string(c.n_b);
        row.curve = c.curve;
        row.raw = c.raw;
        row.snapped = c.value ? c.value->str() : "";
        row.status = c.error.empty() ? "ok" : "error: " + c.error;
        report.rows.push_back(row);
    }
    std::string values;
    for (const auto& v : audit.distinct_values) values += (values.empty() ? "" : " ") + v.str();
    report.verdicts.push_back({"curve independence", audit.pass, "values {" + values + "}"});
}

inline void run_audit(const ScenarioSpec& spec, const ModelHandle& h, Report& report) {
    const auto opts = spec.winding();
    const auto o = detail::resolve_orbits(h, spec, 2);
    const Curve curve = spec.curves.empty() ? h.connect(o[0].base, o[1].base) : parse_curve(spec.curves.front());
    const auto conj = conjugacy_invariance_audit(h.map, curve, standard_change_catalog(), opts);
    for (const auto& c : conj.cases) {
        CaseRow row;
        row.model = h.id;
        row.orbit_a = o[0].label;
        row.orbit_b = o[1].label;
        row.curve = curve.describe() + " under " + c.change;
        row.raw = c.raw + c.endpoint_correction;
        row.snapped = c.value ? c.value->str() : "";
        row.status = c.error.empty() ? "ok" : "error: " + c.error;
        report.rows.push_back(row);
    }
    report.verdicts.push_back({"conjugacy invariance", conj.pass, "reference " + conj.reference.str()});
    const auto sq = square_boundary_audit(h.map, [](double t) { return rotation_map({0, 0}, t * kPi / 6); }, curve, opts);
    report.verdicts.push_back({"square boundary", sq.pass, "raw " + detail::num(sq.raw, "%.3g")});
    if (h.brouwer) {
        const auto d = displacement_audit(h.map, h.window, 41, 41, 1e-3);
        report.verdicts.push_back({"displacement", d.pass, "min |h(p)-p| " + detail::num(d.minimum, "%.4g")});
    }
    for (const auto& r : o) {
        Orbit orbit(h.map, r.base, 0);
        const auto p = properness_probe(orbit);
        report.verdicts.push_back({"properness " + r.label, p.pass,
                                   p.pass ? "forward and backward"
                                          : (p.forward.pass ? "backward: " + p.backward.witness : "forward: " + p.forward.witness)});
    }
}

inline void run_classify(const ScenarioSpec& spec, const ModelHandle& h, Report& report) {
    const std::size_t n = spec.orbits.empty() ? std::min<std::size_t>(3, h.orbits.size()) : spec.orbits.size();
    if (n != 2 && n != 3) throw SpecParseError("classify needs two or three orbits");
    const auto o = detail::resolve_orbits(h, spec, n);
    const auto config = detail::config_of(h, o);
    if (!config) throw SpecParseError("classify needs declared orbits with streamlines");
    report.notes.push_back(serialize(*config));
    if (n == 2) {
        const auto label = classify_two_orbit(*config);
        report.verdicts.push_back({"two-orbit class", true, to_string(label)});
    } else {
        const auto label = classify_three_orbit(*config);
        const auto v = triple_verdict(*config);
        report.verdicts.push_back({"three-orbit class", true,
                                   to_string(label) + " (diagram " + std::to_string(diagram_number(label)) + "), " + v.str()});
    }
}

/// Streamlines of the selected (or all) declared orbits, a few iterates of each, the curves and
/// the index between the first two orbits.
inline Scene build_scene(const ScenarioSpec& spec, const ModelHandle& h, Report& report) {
    Scene scene;
    scene.viewport = spec.viewport.value_or(h.window);
    std::vector<ResolvedOrbit> orbits;
    if (spec.orbits.empty()) {
        for (std::size_t k = 0; k < h.orbits.size(); ++k) orbits.push_back({h.orbits[k].base, k, "#" + std::to_string(k)});
    } else {
        orbits = detail::resolve_orbits(h, spec, spec.orbits.size());
    }
    for (const auto& o : orbits) {
        if (o.declared && h.orbits[*o.declared].streamline) scene.streamlines.push_back({h.orbits[*o.declared].streamline->polyline});
        Orbit orbit(h.map, o.base, 0);
        for (long n = -3; n <= 3; ++n) {
            try {
                scene.markers.push_back({orbit.iterate(n)});
            } catch (const Error&) {
                break;
            }
        }
    }
    for (const auto& text : spec.curves) scene.curves.push_back({parse_curve(text).vertices(), "#2e8b57", false});
    if (orbits.size() >= 2 && h.map.orientation_preserving) {
        try {
            const std::optional<Curve> c = spec.curves.empty() ? std::nullopt : std::optional<Curve>(parse_curve(spec.curves[0]));
            const auto r = detail::index_between(h, orbits[0], orbits[1], c, spec.winding(), spec.seed);
            report.rows.push_back(detail::row_from(h.id, orbits[0], orbits[1], r));
            if (!c) scene.curves.push_back({r.curve_used.vertices(), "#2e8b57", false});
            const Point mid = r.curve_used.at(0.5);
            scene.labels.push_back({{mid.x + 0.1, mid.y}, "I = " + r.value.str()});
        } catch (const Error& e) {
            report.rows.push_back(detail::error_row(h.id, orbits[0], orbits[1], "default", e));
        }
    }
    return scene;
}

inline void run_verify(const ScenarioSpec& spec, Report& report) {
    acceptance::Settings settings;
    settings.winding = spec.winding();
    settings.seed = spec.seed;
    for (const auto& c : acceptance::criteria()) {
        if (spec.level == "quick" && !acceptance::in_quick_suite(c.id)) continue;
        const auto r = acceptance::run_criterion(c, settings);
        report.verdicts.push_back({std::to_string(r.id) + " " + r.name, r.pass, r.detail});
    }
}

/// Runs one experiment. Spec problems throw SpecParseError or ModelNotFound; numerical failures
/// are recorded in the report.
inline Report run(const ScenarioSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    report.experiment = spec.experiment;
    report.seed = spec.seed;
    if (spec.experiment == "verify") {
        report.model = "-";
        run_verify(spec, report);
    } else {
        const auto h = make_model(spec.model);
        report.model = h.id;
        if (spec.experiment == "index") run_index(spec, h, report);
        else if (spec.experiment == "triple") run_triple(spec, h, report);
        else if (spec.experiment == "sweep") run_sweep(spec, h, report);
        else if (spec.experiment == "audit") run_audit(spec, h, report);
        else if (spec.experiment == "classify") run_classify(spec, h, report);
        else if (spec.experiment == "render") report.svg = render_svg(build_scene(spec, h, report));
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace brouwer::harness
