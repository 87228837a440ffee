#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "capheight/construct.hpp"
#include "capheight/heights.hpp"
#include "capheight/intpoly.hpp"
#include "capheight/potential.hpp"
#include "capheight/setgeom.hpp"

namespace capheight {

// Set descriptor text, one primitive per line:
//   disk cx cy r | circle cx cy r | interval a b | julia c0 ... cn
//   arc [closed] x1 y1 x2 y2 ... | union { ... }
// '#' starts a comment. Several top-level primitives form a union.
SetDescriptor parse_set(std::string_view text);
SetDescriptor load_set(const std::filesystem::path& path);
std::string format_set(const SetDescriptor& set);

// Ascending integer coefficients separated by whitespace or commas.
IntPolynomial parse_polynomial(std::string_view text);
IntPolynomial load_polynomial(const std::filesystem::path& path);

// Every *.poly file of a directory, in file-name order.
std::vector<IntPolynomial> load_family(const std::filesystem::path& dir);

// roots.json: array of {re, im, weight}; a missing weight means 1/N.
DiscreteMeasure parse_measure_json(std::string_view text);
DiscreteMeasure load_measure(const std::filesystem::path& path);
std::string measure_json(const DiscreteMeasure& mu);

// Round to 12 significant digits so reports are byte-stable.
double report_round(double v);

std::string height_reports_json(const std::vector<HeightReport>& reports);
std::string construction_state_json(const ConstructionState& state, const MassLaw& law);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace capheight
