// Command-line front end: one subcommand per experiment kind.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brouwer/errors.hpp"
#include "brouwer/harness/report.hpp"
#include "brouwer/harness/runner.hpp"
#include "brouwer/harness/scenario.hpp"

namespace {

using namespace brouwer;
using namespace brouwer::harness;

struct Flags {
    std::string scenario;
    std::optional<std::string> model;
    std::vector<std::string> orbits;
    std::vector<std::string> curves;
    std::optional<std::size_t> samples;
    std::optional<double> snap_tol;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> sweep_curves;
    std::optional<std::string> out;
    std::optional<std::string> svg;
    std::optional<std::string> format;
    std::optional<std::string> level;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--scenario", f.scenario, "Scenario file (JSON); flags override its values");
    sub->add_option("--model", f.model, "Model id, e.g. reeb, stack:R+,R-, parallel:+,+,-, pocket, dehn:0.5,2,0.6,0.9");
    sub->add_option("--orbit", f.orbits, "Orbit base 'x,y' (numbers may use pi, e.g. 0,2.5pi) or declared orbit '#k'; repeatable");
    sub->add_option("--curve", f.curves, "Polyline 'x1,y1;x2,y2;...'; repeatable");
    sub->add_option("--samples", f.samples, "Initial winding samples");
    sub->add_option("--snap-tol", f.snap_tol, "Snapping tolerance");
    sub->add_option("--seed", f.seed, "Seed for random curves");
    sub->add_option("--out", f.out, "Report path (default: stdout)");
    sub->add_option("--svg", f.svg, "SVG output path (render)");
    sub->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"csv", "text"}));
}

ScenarioSpec build_spec(const std::string& experiment, const Flags& f) {
    ScenarioSpec s = f.scenario.empty() ? ScenarioSpec{} : load_scenario(f.scenario);
    s.experiment = experiment;
    if (f.model) s.model = *f.model;
    if (!f.orbits.empty()) s.orbits = f.orbits;
    if (!f.curves.empty()) s.curves = f.curves;
    if (f.samples) s.samples = f.samples;
    if (f.snap_tol) s.snap_tol = f.snap_tol;
    if (f.seed) s.seed = *f.seed;
    if (f.sweep_curves) s.sweep_curves = *f.sweep_curves;
    if (f.out) s.out = *f.out;
    if (f.svg) s.svg = *f.svg;
    if (f.format) s.format = *f.format;
    if (f.level) s.level = *f.level;
    s.validate();
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

int emit(const ScenarioSpec& spec, const Report& report) {
    if (spec.experiment == "render") {
        if (!spec.svg.empty()) write_file(spec.svg, report.svg);
        else if (!spec.out.empty()) write_file(spec.out, report.svg);
        else std::cout << report.svg;
        if (!spec.svg.empty() && !spec.out.empty())
            write_file(spec.out, spec.format == "csv" ? to_csv(report) : to_text(report, false));
        return report.exit_code();
    }
    const std::string body = spec.format == "csv" ? to_csv(report) : to_text(report);
    if (spec.out.empty()) std::cout << body;
    else write_file(spec.out, body);
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Indices of Brouwer homeomorphisms between orbits"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<const char*, const char*>> commands{
        {"index", "Index between two orbits, along default or given curves"},
        {"triple", "Triple sum I12 + I23 + I31 with the configuration prediction"},
        {"sweep", "Curve-independence audit over random curves"},
        {"audit", "Conjugacy, square-boundary, displacement and properness audits"},
        {"classify", "Two- or three-orbit class of declared streamlines"},
        {"render", "SVG of streamlines, orbit points and curves"},
        {"verify", "Acceptance suite: quick or full"}};
    std::string chosen;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, flags);
        if (std::string(name) == "sweep") sub->add_option("--curves", flags.sweep_curves, "Number of random curves");
        if (std::string(name) == "verify")
            sub->add_option("level", flags.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
        sub->callback([&chosen, name = std::string(name)] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kSpecError;
    }

    try {
        const auto spec = build_spec(chosen, flags);
        const auto report = run(spec);
        return emit(spec, report);
    } catch (const SpecParseError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kSpecError;
    } catch (const ModelNotFound& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kSpecError;
    } catch (const Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return kComputationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kComputationError;
    }
}
