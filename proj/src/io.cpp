#include "confplan/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace confplan::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <class P>
void require_separated(const Configuration<P>& c) {
  if (c.size() > 1 && min_separation(c) < kMinInputSeparation)
    throw Error(ErrorCode::InsufficientSeparation, "points closer than 1e-7");
}

Pair pair_of(const AnnulusPoint& p) { return {p.theta, p.height}; }
Pair pair_of(const PlanePoint& p) { return {p.re, p.im}; }

template <class P>
json points_json(std::span<const P> pts) {
  json a = json::array();
  for (const auto& p : pts) {
    const auto q = pair_of(p);
    a.push_back({q[0], q[1]});
  }
  return a;
}

template <class Move>
SampledPath sample_impl(const PathPlan<Move>& p, std::size_t samples, Surface surface) {
  SampledPath s;
  s.surface = surface;
  samples = std::max<std::size_t>(samples, 2);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    std::vector<Pair> row;
    for (const auto& q : p.evaluate_tracks(t)) row.push_back(pair_of(q));
    s.times.push_back(t);
    s.points.push_back(std::move(row));
  }
  return s;
}

template <class Move, class Params>
json segments_impl(const PathPlan<Move>& p, Params&& params) {
  json out = json::array();
  for (std::size_t k = 0; k < p.segments().size(); ++k) {
    const auto& s = p.segments()[k];
    const std::string kind(s.move.kind_name());
    json d;
    d["label"] = s.label;
    d["kind"] = s.reversed ? "reverse-of(" + kind + ")" : kind;
    d["weight"] = s.weight;
    d["t_start"] = p.segment_start(k);
    d["from"] = points_json<typename Move::point_type>(s.move.from);
    d["to"] = points_json<typename Move::point_type>(s.move.to);
    d["params"] = params(s.move);
    if (!s.perm.empty()) d["tracks"] = s.perm;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::string_view surface_name(Surface s) { return s == Surface::Annulus ? "annulus" : "disc"; }

Surface parse_surface(std::string_view name) {
  if (name == "annulus") return Surface::Annulus;
  if (name == "disc" || name == "disc3") return Surface::Disc;
  parse_fail("unknown surface '" + std::string(name) + "'");
}

ConfigDocument parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  if (!j.is_object()) parse_fail("configuration must be a JSON object");
  for (const char* key : {"surface", "n", "points"})
    if (!j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  if (!j["surface"].is_string()) parse_fail("'surface' must be a string");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) parse_fail("'n' must be a positive integer");
  if (!j["points"].is_array()) parse_fail("'points' must be an array");

  ConfigDocument doc;
  doc.surface = parse_surface(j["surface"].get<std::string>());
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      parse_fail("each point must be a pair of numbers");
    const Pair q{p[0].get<double>(), p[1].get<double>()};
    if (!std::isfinite(q[0]) || !std::isfinite(q[1])) parse_fail("coordinates must be finite");
    doc.points.push_back(q);
  }
  if (doc.points.size() != j["n"].get<std::size_t>()) parse_fail("'n' disagrees with the number of points");
  return doc;
}

ConfigDocument read_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) parse_fail("cannot open '" + file + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string write_config(const ConfigDocument& doc) {
  json j;
  j["surface"] = surface_name(doc.surface);
  j["n"] = doc.points.size();
  j["points"] = json::array();
  for (const auto& p : doc.points) j["points"].push_back({p[0], p[1]});
  return j.dump(2) + "\n";
}

AnnulusConfiguration to_annulus(const ConfigDocument& doc) {
  if (doc.surface != Surface::Annulus) throw Error(ErrorCode::InvalidArgument, "document describes a disc configuration");
  std::vector<AnnulusPoint> pts;
  for (const auto& p : doc.points) pts.emplace_back(p[0], p[1]);
  auto c = AnnulusConfiguration::canonicalize(std::move(pts));
  require_separated(c);
  return c;
}

PlaneConfiguration to_plane(const ConfigDocument& doc) {
  if (doc.surface != Surface::Disc) throw Error(ErrorCode::InvalidArgument, "document describes an annulus configuration");
  std::vector<PlanePoint> pts;
  for (const auto& p : doc.points) pts.emplace_back(p[0], p[1]);
  auto c = PlaneConfiguration::canonicalize(std::move(pts));
  require_separated(c);
  return c;
}

ConfigDocument from_configuration(const AnnulusConfiguration& c) {
  ConfigDocument d{Surface::Annulus, {}};
  for (const auto& p : c.points()) d.points.push_back(pair_of(p));
  return d;
}

ConfigDocument from_configuration(const PlaneConfiguration& c) {
  ConfigDocument d{Surface::Disc, {}};
  for (const auto& p : c.points()) d.points.push_back(pair_of(p));
  return d;
}

SampledPath sample(const AnnulusPath& p, std::size_t samples) { return sample_impl(p, samples, Surface::Annulus); }
SampledPath sample(const PlanePath& p, std::size_t samples) { return sample_impl(p, samples, Surface::Disc); }

json segments_json(const AnnulusPath& p) {
  return segments_impl(p, [](const AnnulusMove& m) { return json{{"dtheta", m.dtheta}}; });
}

json segments_json(const PlanePath& p) {
  return segments_impl(p, [](const PlaneMove& m) {
    json q = json::object();
    switch (m.kind) {
      case PlaneMove::Kind::Linear:
      case PlaneMove::Kind::RadialSlide:
        q["target"] = points_json<PlanePoint>(m.target);
        break;
      case PlaneMove::Kind::Rotation:
        q["angle"] = m.angle;
        break;
      case PlaneMove::Kind::ArcEqualize:
        q["rate"] = m.rate;
        break;
    }
    if (!m.compensation.empty()) {
      q["compensation_knots"] = m.knots.size();
      q["compensation_end"] = m.compensation_at(1.0);
      q["orientation_lift"] = m.orientation_lift;
    }
    return q;
  });
}

json export_path(const SampledPath& s, const std::string& stratum, json segments) {
  json j;
  j["surface"] = surface_name(s.surface);
  j["n"] = s.points.empty() ? 0 : s.points.front().size();
  j["stratum"] = stratum;
  j["samples"] = json::array();
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    json row = json::array();
    for (const auto& p : s.points[i]) row.push_back({p[0], p[1]});
    j["samples"].push_back({{"t", s.times[i]}, {"points", std::move(row)}});
  }
  j["segments"] = std::move(segments);
  return j;
}

}  // namespace confplan::io
