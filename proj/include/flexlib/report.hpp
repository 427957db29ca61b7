#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flexlib/census.hpp"
#include "flexlib/curve.hpp"

namespace flex {

// CSV renderers.  Flex rows use the columns
//   kind,location_start,location_end,multiplicity_total,osculating_coeffs
// and summary rows
//   check,required,observed,pass
// with '.' decimals and 12 significant digits for angles.  Coefficients are
// ';'-joined inside the last field.
std::string csv_render_flexes(const CensusReport& report);
std::string csv_render_census(const CensusReport& report);
std::string csv_render_corpus(const std::vector<std::pair<int, CensusReport>>& reports);
std::string csv_render_bose(const BoseTally& tally);
std::string csv_render_vertices(const std::vector<VertexRecord>& records);
std::string csv_render_sextactic(const std::vector<SextacticRecord>& records);

void write_file(const std::string& path, const std::string& content);

// Deterministic SVG plots: the function with the osculating polynomials of
// its clean flexes, or the curve with its osculating circles / conics.
std::string svg_render_function(const PeriodicFunction& u,
                                const std::vector<FlexRecord>& records,
                                int width = 800, int height = 500);
std::string svg_render_curve(const SupportCurve& curve,
                             const std::vector<VertexRecord>& vertices,
                             const std::vector<SextacticRecord>& sextactics,
                             const std::string& note = "",
                             int width = 640, int height = 640);

} // namespace flex
