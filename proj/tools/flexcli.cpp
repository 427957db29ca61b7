#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexlib/cli.hpp"
#include "flexlib/errors.hpp"

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw flex::ParseError("bad number in list: " + item);
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flexlib: clean flexes of periodic functions, vertices and sextactic points "
                 "of convex curves"};
    app.require_subcommand(1);

    std::string fourier, antiperiodic, catalog, support_fourier, support_catalog;
    std::vector<double> params, support_params;
    std::string config_path, out_path, svg_path;
    int n = 1, count = 20, samples = 0, space_order = 0;
    std::uint64_t seed = 1;
    double tol_zero = -1.0, tol_contact = -1.0, tol_support = -1.0, gap = -1.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--fourier", fourier, "periodic coefficients a0,a1,b1,...");
        cmd->add_option("--antiperiodic", antiperiodic,
                        "antiperiodic coefficients a1,b1,... (frequencies 1/2, 3/2, ...)");
        cmd->add_option("--catalog", catalog, "catalog function name");
        cmd->add_option("--param", params, "catalog parameter (repeatable)");
        cmd->add_option("--support-fourier", support_fourier, "support function coefficients");
        cmd->add_option("--support-catalog", support_catalog, "support function catalog name");
        cmd->add_option("--support-param", support_params, "support catalog parameter");
        cmd->add_option("--n", n, "half-order of the analyzed space A_{2n+1}");
        cmd->add_option("--space-order", space_order, "explicit space order (overrides --n)");
        cmd->add_option("--seed", seed, "corpus seed");
        cmd->add_option("--count", count, "corpus size");
        cmd->add_option("--samples", samples, "base grid samples");
        cmd->add_option("--tol-zero", tol_zero, "zero tolerance");
        cmd->add_option("--tol-contact", tol_contact, "contact tolerance");
        cmd->add_option("--tol-support", tol_support, "support tolerance");
        cmd->add_option("--gap", gap, "arc merge gap (radians)");
        cmd->add_option("--out", out_path, "CSV output path");
        cmd->add_option("--svg", svg_path, "SVG output path");
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
    };

    for (const char* name : {"flexes", "census", "bose", "curve", "sextactic", "corpus"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    try {
        flex::RunConfig cfg;
        if (!config_path.empty()) cfg = flex::load_config_json(config_path);
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();

        auto was_set = [&](const char* flag) { return sub->count(flag) > 0; };
        if (was_set("--fourier")) cfg.fourier = parse_csv_doubles(fourier);
        if (was_set("--antiperiodic")) cfg.antiperiodic_fourier = parse_csv_doubles(antiperiodic);
        if (was_set("--catalog")) cfg.catalog = catalog;
        if (was_set("--param")) cfg.params = params;
        if (was_set("--support-fourier")) cfg.support_fourier = parse_csv_doubles(support_fourier);
        if (was_set("--support-catalog")) cfg.support_catalog = support_catalog;
        if (was_set("--support-param")) cfg.support_params = support_params;
        if (was_set("--n")) cfg.n = n;
        if (was_set("--space-order")) cfg.space_order = space_order;
        if (was_set("--seed")) cfg.seed = seed;
        if (was_set("--count")) cfg.count = count;
        if (was_set("--samples")) cfg.grid.base_samples = samples;
        if (was_set("--tol-zero")) cfg.grid.zero_tol = tol_zero;
        if (was_set("--tol-contact")) cfg.grid.contact_tol = tol_contact;
        if (was_set("--tol-support")) cfg.grid.support_tol = tol_support;
        if (was_set("--gap")) cfg.grid.gap_threshold = gap;
        if (was_set("--out")) cfg.csv_path = out_path;
        if (was_set("--svg")) cfg.svg_path = svg_path;

        return flex::run_config(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << "\n";
        return 2;
    }
}
