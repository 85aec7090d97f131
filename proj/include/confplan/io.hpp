#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "confplan/path.hpp"
#include "confplan/sampling.hpp"

/// Flat-file formats.
///
/// Configuration document:
///   { "surface": "annulus" | "disc", "n": 3, "points": [[a, b], ...] }
/// with [a, b] = [theta, height] on the annulus and [re, im] in the disc.
namespace confplan::io {

using Pair = std::array<double, 2>;

struct ConfigDocument {
  Surface surface = Surface::Annulus;
  std::vector<Pair> points;
};

std::string_view surface_name(Surface s);
/// Accepts "annulus", "disc" and "disc3"; throws ParseError otherwise.
Surface parse_surface(std::string_view name);

/// Throws ParseError on malformed JSON, missing fields, non-finite
/// coordinates or an n that disagrees with the number of points.
ConfigDocument parse_config(std::string_view text);
ConfigDocument read_config(const std::string& file);
std::string write_config(const ConfigDocument& doc);

/// Canonical configurations from a document. Throws InvalidArgument for the
/// wrong surface, DuplicatePoint, and InsufficientSeparation when two points
/// are closer than kMinInputSeparation.
AnnulusConfiguration to_annulus(const ConfigDocument& doc);
PlaneConfiguration to_plane(const ConfigDocument& doc);
ConfigDocument from_configuration(const AnnulusConfiguration& c);
ConfigDocument from_configuration(const PlaneConfiguration& c);

/// Uniform time samples of a path in track order. Both the JSON export and
/// the SVG renderer read from this.
struct SampledPath {
  Surface surface = Surface::Annulus;
  std::vector<double> times;
  std::vector<std::vector<Pair>> points;  // points[s][track]
};

SampledPath sample(const AnnulusPath& p, std::size_t samples);
SampledPath sample(const PlanePath& p, std::size_t samples);

nlohmann::json segments_json(const AnnulusPath& p);
nlohmann::json segments_json(const PlanePath& p);

/// { surface, n, stratum, samples: [{t, points}], segments: [...] }
nlohmann::json export_path(const SampledPath& s, const std::string& stratum, nlohmann::json segments);

}  // namespace confplan::io
