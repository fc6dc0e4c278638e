///
/// \file io.hpp
///
/// Text formats used by the command-line tool.
///
/// Polygon files: UTF-8 text, one control point per line, coordinates
/// separated by whitespace. Blank lines are skipped and `#` starts a comment
/// that runs to the end of the line. Every point has the same dimension.
///
/// Sample CSV: header `s,x1,...,xd`, then one row per grid value. Numbers are
/// written as the shortest decimal that reads back to the same double.
///
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hbz/bezier.hpp"

namespace hbz {

/// Throws InputError (ParseError or DimensionMismatch) with the offending line.
ControlPolygon parse_polygon(std::string_view text);
ControlPolygon parse_polygon_file(const std::filesystem::path& path);

std::string format_polygon(const ControlPolygon& poly);

std::string samples_to_csv(const CurveSamples& samples);
/// Reads back the output of samples_to_csv (svalues and points only).
CurveSamples samples_from_csv(std::string_view text);

/// Static SVG: sampled curve as a polyline over the dashed control polygon,
/// viewBox fitted to the control points' bounding box. Uses the first two
/// axes; a 1-D curve is drawn as (s, x).
std::string samples_to_svg(const CurveSamples& samples, const ControlPolygon& poly);

} // namespace hbz
