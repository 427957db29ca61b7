#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flexlib/scan.hpp"

namespace flex {

// Parsed run configuration; built from flags and/or a JSON config file
// (flags override file values).
struct RunConfig {
    std::string command; // flexes | census | bose | curve | sextactic | corpus

    // function spec (flexes / census / bose / corpus seed material)
    std::vector<double> fourier;              // a0,a1,b1,...
    std::vector<double> antiperiodic_fourier; // a1,b1,... (half-integer modes)
    std::string catalog;
    std::vector<double> params;

    // curve spec (curve / sextactic)
    std::vector<double> support_fourier;
    std::string support_catalog;
    std::vector<double> support_params;

    int n = 1;
    int space_order = 0; // 0: derive from n and parity
    GridProfile grid;
    std::uint64_t seed = 1;
    int count = 20;
    std::string csv_path;
    std::string svg_path;
};

RunConfig load_config_json(const std::string& path);

// Executes one command.  Exit status contract: 0 success, 1 theorem-check
// failure, 2 input error.
int run_config(const RunConfig& config, std::ostream& log);

} // namespace flex
