#pragma once

// JSON forms of every published type. Integers are JSON numbers when they fit
// in a signed long and decimal strings otherwise; rationals are always "p/q"
// or "p" strings. Object keys come out sorted, so equal values serialize to
// identical bytes.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "toricflip/flip.hpp"
#include "toricflip/section.hpp"

namespace toricflip::io {

using json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& msg) {
  throw Error(ErrorCode::schema, msg);
}

inline json to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Rat r = parse_rational(j.get<std::string>());
    if (r.get_den() != 1) schema_error("expected an integer, got " + j.dump());
    return r.get_num();
  }
  schema_error("expected an integer, got " + j.dump());
}

inline json to_json(const Rat& x) { return x.get_str(); }

inline Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  schema_error("expected a rational string, got " + j.dump());
}

inline json to_json(const IVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}
inline json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}
inline json to_json(const std::vector<IVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline IVector ivector_from_json(const json& j, std::size_t len) {
  if (!j.is_array() || j.size() != len)
    schema_error("expected an integer vector of length " + std::to_string(len));
  IVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

inline QVector qvector_from_json(const json& j) {
  if (!j.is_array()) schema_error("expected an array of rationals");
  QVector v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

inline json to_json(const IMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row_vector(i)));
  return a;
}

inline IMatrix imatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) schema_error("expected a non-empty matrix");
  std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  std::vector<IVector> rows;
  for (const auto& r : j) rows.push_back(ivector_from_json(r, cols));
  return IMatrix::from_rows(rows, cols);
}

inline json to_json(const IndexSet& s) {
  json a = json::array();
  for (auto i : s) a.push_back(i);
  return a;
}
inline json to_json(const std::vector<IndexSet>& ss) {
  json a = json::array();
  for (const auto& s : ss) a.push_back(to_json(s));
  return a;
}

// ---------------------------------------------------------------------------
// cones

inline json to_json(const Cone& c) {
  json j = {{"dim", c.ambient_dim()},
            {"generators", to_json(c.generators())},
            {"halfspaces", to_json(c.halfspaces())}};
  if (c.is_zero()) j["trivial"] = true;
  return j;
}

inline Cone cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned())
    schema_error("cone needs a non-negative integer \"dim\"");
  std::size_t n = j["dim"].get<std::size_t>();
  auto list = [&](const char* key) {
    std::vector<IVector> out;
    if (!j[key].is_array()) schema_error(std::string("cone \"") + key + "\" must be an array");
    for (const auto& v : j[key]) out.push_back(ivector_from_json(v, n));
    return out;
  };
  if (j.value("trivial", false)) return Cone::zero(n);
  bool has_g = j.contains("generators"), has_h = j.contains("halfspaces");
  if (!has_g && !has_h) schema_error("cone needs \"generators\" or \"halfspaces\"");
  if (has_g) {
    Cone c = Cone::from_generators(n, list("generators"));
    if (has_h && !(Cone::from_halfspaces(n, list("halfspaces")) == c))
      schema_error("cone generators and halfspaces describe different cones");
    return c;
  }
  return Cone::from_halfspaces(n, list("halfspaces"));
}

// ---------------------------------------------------------------------------
// fans

inline json to_json(const Fan& f) {
  json rays = json::array();
  for (std::size_t j = 0; j < f.ray_count(); ++j) rays.push_back(to_json(f.ray(j)));
  return {{"dim", f.dim()}, {"rays", rays}, {"max_cones", to_json(f.max_cones())}};
}

inline Fan fan_from_json(const json& j) {
  if (!j.is_object()) schema_error("fan must be a JSON object");
  for (const char* key : {"dim", "rays", "max_cones"})
    if (!j.contains(key)) schema_error(std::string("fan is missing \"") + key + "\"");
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    schema_error("fan \"dim\" must be a positive integer");
  std::size_t n = j["dim"].get<std::size_t>();
  if (!j["rays"].is_array() || j["rays"].empty()) schema_error("fan \"rays\" must be a non-empty array");
  std::vector<IVector> cols;
  for (const auto& r : j["rays"]) cols.push_back(ivector_from_json(r, n));
  if (!j["max_cones"].is_array()) schema_error("fan \"max_cones\" must be an array");
  std::vector<IndexSet> cones;
  for (const auto& c : j["max_cones"]) {
    if (!c.is_array()) schema_error("each max cone must be an array of indices");
    IndexSet s;
    for (const auto& i : c) {
      if (!i.is_number_unsigned()) schema_error("cone indices must be non-negative integers");
      s.push_back(i.get<std::size_t>());
    }
    cones.push_back(std::move(s));
  }
  return Fan(IMatrix::from_columns(cols, n), std::move(cones));
}

inline json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"kind", x.kind}, {"message", x.message}, {"indices", x.indices}});
  return {{"valid", r.valid()}, {"violations", v}};
}

inline json to_json(const SubdivisionReport& r) {
  return {{"parent", to_json(r.parent)}, {"child", to_json(r.child)},
          {"added_walls", to_json(r.added_walls)}};
}

// ---------------------------------------------------------------------------
// weights, divisors, secondary fan

inline json to_json(const WeightMatrix& w) {
  return {{"Q", to_json(w.Q)},
          {"source", w.source == WeightSource::computed ? "computed" : "supplied"},
          {"torsion_free", w.torsion_free}};
}

/// Only "Q" is read; "source" is informational.
inline IMatrix weights_from_json(const json& j) {
  if (!j.is_object() || !j.contains("Q")) schema_error("weight matrix file needs a \"Q\" key");
  return imatrix_from_json(j["Q"]);
}

inline json to_json(const TDivisor& d) { return {{"coeffs", to_json(d.coeffs)}}; }

inline TDivisor divisor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs")) schema_error("divisor needs \"coeffs\"");
  return {qvector_from_json(j["coeffs"])};
}

inline json to_json(const SecondaryFan& sf) {
  json chambers = json::array();
  for (const auto& c : sf.chambers)
    chambers.push_back({{"cone", to_json(c.cone)}, {"compatible_bases", to_json(c.compatible_bases)}});
  json walls = json::array();
  for (const auto& w : sf.walls)
    walls.push_back({{"cone", to_json(w.cone)}, {"chambers", {w.left, w.right}}});
  return {{"weights", to_json(sf.weights)}, {"mov", to_json(sf.mov)},
          {"chambers", chambers}, {"walls", walls}};
}

// ---------------------------------------------------------------------------
// flips

inline json to_json(const VerificationReport& r) {
  json j = json::object();
  for (const auto& [name, ok] : r.checks) j[name] = ok;
  return j;
}

inline json to_json(const FlipCertificate& c) {
  return {{"source", to_json(c.source)},
          {"target", to_json(c.target)},
          {"divisor", to_json(c.divisor.coeffs)},
          {"class", to_json(c.divisor_class)},
          {"source_nef", to_json(c.source_nef)},
          {"target_chamber", to_json(c.target_chamber)},
          {"checks", to_json(c.checks)}};
}

/// Stored checks are read back as-is; call verify_flip to recompute them.
inline FlipCertificate certificate_from_json(const json& j) {
  for (const char* key : {"source", "target", "divisor", "class"})
    if (!j.contains(key)) schema_error(std::string("certificate is missing \"") + key + "\"");
  FlipCertificate c;
  c.source = fan_from_json(j["source"]);
  c.target = fan_from_json(j["target"]);
  c.divisor.coeffs = qvector_from_json(j["divisor"]);
  c.divisor_class = qvector_from_json(j["class"]);
  if (j.contains("source_nef")) c.source_nef = cone_from_json(j["source_nef"]);
  if (j.contains("target_chamber")) c.target_chamber = cone_from_json(j["target_chamber"]);
  if (j.contains("checks"))
    for (const auto& [k, v] : j["checks"].items()) c.checks.checks.emplace_back(k, v.get<bool>());
  return c;
}

inline json to_json(const PipelineResult& p) {
  return {{"input", to_json(p.input)},
          {"resolution", p.resolution ? to_json(*p.resolution) : json(nullptr)},
          {"flip", p.flip ? to_json(*p.flip) : json(nullptr)},
          {"final", to_json(p.final_fan)},
          {"weights", to_json(p.weights)}};
}

inline json to_json(const SectionData& s) {
  auto pt = [](const Point2& p) { return json::array({to_json(p[0]), to_json(p[1])}); };
  json polys = json::array();
  for (const auto& p : s.polygons) {
    json vs = json::array();
    for (const auto& v : p.vertices) vs.push_back(pt(v));
    polys.push_back({{"label", p.label}, {"vertices", vs}});
  }
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back({{"label", p.label}, {"coords", pt(p.coords)}});
  return {{"plane", s.plane}, {"polygons", polys}, {"points", pts}};
}

// ---------------------------------------------------------------------------
// files

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema, path + ": " + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace toricflip::io
