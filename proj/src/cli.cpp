#include "flexlib/cli.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "flexlib/census.hpp"
#include "flexlib/curve.hpp"
#include "flexlib/parallel.hpp"
#include "flexlib/report.hpp"

namespace flex {

namespace {

PeriodicFunction make_function(const RunConfig& cfg) {
    int sources = 0;
    if (!cfg.fourier.empty()) ++sources;
    if (!cfg.antiperiodic_fourier.empty()) ++sources;
    if (!cfg.catalog.empty()) ++sources;
    if (sources != 1)
        throw ParseError("exactly one of --fourier, --antiperiodic, --catalog is required");
    if (!cfg.fourier.empty()) return PeriodicFunction::fourier(cfg.fourier);
    if (!cfg.antiperiodic_fourier.empty())
        return PeriodicFunction::antiperiodic_fourier(cfg.antiperiodic_fourier);
    return PeriodicFunction::catalog(cfg.catalog, cfg.params);
}

SupportCurve make_curve(const RunConfig& cfg) {
    int sources = 0;
    if (!cfg.support_fourier.empty()) ++sources;
    if (!cfg.support_catalog.empty()) ++sources;
    if (sources != 1)
        throw ParseError("exactly one of --support-fourier, --support-catalog is required");
    PeriodicFunction h = !cfg.support_fourier.empty()
                             ? PeriodicFunction::fourier(cfg.support_fourier)
                             : PeriodicFunction::catalog(cfg.support_catalog, cfg.support_params);
    return SupportCurve(std::move(h), {0.0, 0.0}, cfg.grid);
}

SpaceDescriptor analysis_space(const RunConfig& cfg, Parity parity) {
    if (cfg.space_order > 0) return SpaceDescriptor(cfg.space_order);
    return SpaceDescriptor(parity == Parity::periodic ? 2 * cfg.n + 1 : 2 * cfg.n);
}

int run_flexes(const RunConfig& cfg, std::ostream& log) {
    const PeriodicFunction u = make_function(cfg);
    const SpaceDescriptor space = analysis_space(cfg, u.parity());
    CensusReport report = space.parity() == Parity::periodic
                              ? clean_flex_census(u, (space.order() - 1) / 2, cfg.grid)
                              : flex_count_census(u, space, cfg.grid);
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv_render_flexes(report));
    if (!cfg.svg_path.empty()) write_file(cfg.svg_path, svg_render_function(u, report.records));
    log << "flexes: " << report.records.size() << " found\n";
    return 0;
}

int run_census(const RunConfig& cfg, std::ostream& log) {
    const PeriodicFunction u = make_function(cfg);
    const SpaceDescriptor space = analysis_space(cfg, u.parity());
    CensusReport report = space.parity() == Parity::periodic
                              ? clean_flex_census(u, (space.order() - 1) / 2, cfg.grid)
                              : flex_count_census(u, space, cfg.grid);
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv_render_census(report));
    if (!cfg.svg_path.empty()) write_file(cfg.svg_path, svg_render_function(u, report.records));
    for (const TheoremCheck& c : report.checks)
        log << c.name << ": required " << c.required << ", observed " << c.observed << ", "
            << (c.pass ? "pass" : "FAIL") << "\n";
    return report.all_pass() ? 0 : 1;
}

int run_bose(const RunConfig& cfg, std::ostream& log) {
    const PeriodicFunction u = make_function(cfg);
    const BoseTally tally = bose_tally(u, cfg.grid);
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv_render_bose(tally));
    log << "bose: s=" << tally.s_count << " t=" << tally.t_count
        << " difference=" << tally.difference << "\n";
    return tally.difference == 2 ? 0 : 1;
}

int run_curve(const RunConfig& cfg, std::ostream& log) {
    const SupportCurve curve = make_curve(cfg);
    std::vector<VertexRecord> vertices;
    std::string note;
    try {
        vertices = vertex_scan(curve, cfg.grid);
    } catch (const CircleDegenerate&) {
        note = "degenerate: circle";
    }
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv_render_vertices(vertices));
    if (!cfg.svg_path.empty())
        write_file(cfg.svg_path, svg_render_curve(curve, vertices, {}, note));
    log << "curve: " << vertices.size() << " vertices" << (note.empty() ? "" : " (" + note + ")")
        << "\n";
    return 0;
}

int run_sextactic(const RunConfig& cfg, std::ostream& log) {
    const SupportCurve curve = make_curve(cfg);
    const std::vector<SextacticRecord> records = sextactic_scan(curve, cfg.grid);
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv_render_sextactic(records));
    if (!cfg.svg_path.empty()) write_file(cfg.svg_path, svg_render_curve(curve, {}, records, ""));
    log << "sextactic: " << records.size() << " records\n";
    return 0;
}

int run_corpus(const RunConfig& cfg, std::ostream& log) {
    CorpusSpec spec;
    spec.count = cfg.count;
    spec.n = cfg.n;
    spec.seed = cfg.seed;
    const std::vector<PeriodicFunction> corpus = random_corpus(spec);

    std::vector<std::pair<int, CensusReport>> reports(corpus.size());
    par::for_index(static_cast<std::ptrdiff_t>(corpus.size()), [&](std::size_t i) {
        reports[i] = {static_cast<int>(i), clean_flex_census(corpus[i], cfg.n, cfg.grid)};
    });

    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv_render_corpus(reports));
    bool all = true;
    for (const auto& [idx, report] : reports) {
        if (!report.all_pass()) {
            all = false;
            log << "corpus[" << idx << "]: FAIL\n";
        }
    }
    log << "corpus: " << corpus.size() << " functions, " << (all ? "all pass" : "failures") << "\n";
    return all ? 0 : 1;
}

} // namespace

RunConfig load_config_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config parse error: ") + e.what());
    }

    RunConfig cfg;
    auto get_doubles = [&](const char* key, std::vector<double>& out) {
        if (j.contains(key)) out = j[key].get<std::vector<double>>();
    };
    try {
        if (j.contains("command")) cfg.command = j["command"].get<std::string>();
        get_doubles("fourier", cfg.fourier);
        get_doubles("antiperiodic_fourier", cfg.antiperiodic_fourier);
        if (j.contains("catalog")) cfg.catalog = j["catalog"].get<std::string>();
        get_doubles("params", cfg.params);
        get_doubles("support_fourier", cfg.support_fourier);
        if (j.contains("support_catalog"))
            cfg.support_catalog = j["support_catalog"].get<std::string>();
        get_doubles("support_params", cfg.support_params);
        if (j.contains("n")) cfg.n = j["n"].get<int>();
        if (j.contains("space_order")) cfg.space_order = j["space_order"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("count")) cfg.count = j["count"].get<int>();
        if (j.contains("out")) cfg.csv_path = j["out"].get<std::string>();
        if (j.contains("svg")) cfg.svg_path = j["svg"].get<std::string>();
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (g.contains("base_samples")) cfg.grid.base_samples = g["base_samples"].get<int>();
            if (g.contains("refine_depth")) cfg.grid.refine_depth = g["refine_depth"].get<int>();
            if (g.contains("zero_tol")) cfg.grid.zero_tol = g["zero_tol"].get<double>();
            if (g.contains("contact_tol")) cfg.grid.contact_tol = g["contact_tol"].get<double>();
            if (g.contains("support_tol")) cfg.grid.support_tol = g["support_tol"].get<double>();
            if (g.contains("gap_threshold"))
                cfg.grid.gap_threshold = g["gap_threshold"].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config field error: ") + e.what());
    }
    return cfg;
}

int run_config(const RunConfig& cfg, std::ostream& log) {
    try {
        if (cfg.command == "flexes") return run_flexes(cfg, log);
        if (cfg.command == "census") return run_census(cfg, log);
        if (cfg.command == "bose") return run_bose(cfg, log);
        if (cfg.command == "curve") return run_curve(cfg, log);
        if (cfg.command == "sextactic") return run_sextactic(cfg, log);
        if (cfg.command == "corpus") return run_corpus(cfg, log);
        throw ParseError("unknown command: " + cfg.command);
    } catch (const IoError& e) {
        log << "io error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace flex
