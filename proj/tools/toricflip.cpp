// toricflip: batch front end over the toricflip library.
//
//   toricflip <verb> <fan.json> [--weights Q.json] [--prefer-projective-subdivision] [-o DIR]
//
// Exit status: 0 success, 1 domain error, 2 I/O or schema error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "toricflip/toricflip.hpp"

namespace {

using namespace toricflip;
using io::json;

struct Options {
  std::string verb;
  std::string fan_path;
  std::string weights_path;
  std::string out_dir;
  bool prefer_projective = false;
  bool quiet = false;
};

const std::vector<std::string> kVerbs = {"check",      "subdivide", "gale",
                                         "chambers",   "nef",       "projective",
                                         "flip",       "projectivize", "section"};

void log_line(const Options& o, const std::string& s) {
  if (!o.quiet) std::cerr << s << '\n';
}

std::string cones_label(const std::vector<IndexSet>& cs) {
  std::string s;
  for (const auto& c : cs) s += (s.empty() ? "" : " ") + label(c);
  return s;
}

WeightMatrix load_weights(const Options& o, const Fan& f) {
  if (o.weights_path.empty()) return gale_dual(f.fan_matrix());
  return supplied_weights(f.fan_matrix(), io::weights_from_json(io::read_json_file(o.weights_path)));
}

json run_verb(const Options& o, const Fan& f, ExecOptions exec) {
  if (o.verb == "check") {
    auto rep = validate(f);
    json j = io::to_json(rep);
    j["complete"] = rep.valid() ? json(is_complete(f)) : json(nullptr);
    j["simplicial"] = rep.valid() ? json(is_simplicial(f)) : json(nullptr);
    for (const auto& v : rep.violations) log_line(o, "violation (" + v.kind + "): " + v.message);
    return j;
  }
  if (o.verb == "subdivide") {
    auto subs = simplicial_subdivisions(f, exec);
    json list = json::array();
    for (std::size_t i = 0; i < subs.size(); ++i) {
      auto rep = added_walls(f, subs[i]);
      list.push_back({{"fan", io::to_json(subs[i])}, {"added_walls", io::to_json(rep.added_walls)}});
      log_line(o, "subdivision " + std::to_string(i + 1) + ": " + cones_label(subs[i].max_cones()));
    }
    return {{"count", subs.size()}, {"subdivisions", list}};
  }
  WeightMatrix W = load_weights(o, f);
  if (!W.torsion_free)
    log_line(o, "warning: class group has torsion; only its free part is modeled");
  if (o.verb == "gale") return io::to_json(W);
  if (o.verb == "chambers") {
    auto sf = secondary_fan(W, exec);
    for (std::size_t i = 0; i < sf.chambers.size(); ++i)
      log_line(o, "chamber " + std::to_string(i + 1) + ": " +
                      cones_label(sf.chambers[i].compatible_bases));
    return io::to_json(sf);
  }
  if (o.verb == "nef") {
    json b = json::array();
    for (const auto& c : bunch(f, W)) b.push_back(io::to_json(c));
    Cone nef = nef_cone(f, W);
    return {{"nef", io::to_json(nef)}, {"bunch", b}, {"projective", nef.dim() == W.rank()}};
  }
  if (o.verb == "projective") {
    Cone nef = nef_cone(f, W);
    return {{"projective", nef.dim() == W.rank()}, {"nef_dim", nef.dim()}, {"rank", W.rank()}};
  }
  if (o.verb == "flip") {
    auto cert = find_flip(f, W, exec);
    log_line(o, "flip target: " + cones_label(cert.target.max_cones()));
    return io::to_json(cert);
  }
  if (o.verb == "projectivize") {
    ProjectivizeOptions po;
    po.prefer_projective_subdivision = o.prefer_projective;
    if (W.source == WeightSource::supplied) po.weights = W.Q;
    po.exec = exec;
    auto res = projectivize(f, po);
    log_line(o, "final fan: " + cones_label(res.final_fan.max_cones()));
    return io::to_json(res);
  }
  if (o.verb == "section") {
    auto sf = secondary_fan(W, exec);
    if (W.rank() != 3) {
      log_line(o, "warning: sections need rank 3; emitting raw chamber cones");
      json cs = json::array();
      for (const auto& c : sf.chambers) cs.push_back(io::to_json(c.cone));
      return {{"warning", "rank is " + std::to_string(W.rank()) + ", not 3"}, {"chambers", cs}};
    }
    return io::to_json(emit_section(W, sf));
  }
  throw Error(ErrorCode::schema, "unknown verb '" + o.verb + "'");
}

int emit_error(const Error& e) {
  json j = {{"error", {{"code", error_code_name(e.code())}, {"message", e.what()}}}};
  std::cout << io::dump(j);
  std::cerr << "error: " << e.what() << '\n';
  return (e.code() == ErrorCode::io || e.code() == ErrorCode::schema) ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Projective Q-factorial models of complete toric varieties via certified flips"};
  app.add_option("verb", o.verb, "one of: check subdivide gale chambers nef projective flip projectivize section")
      ->required()
      ->check(CLI::IsMember(kVerbs));
  app.add_option("fan", o.fan_path, "fan JSON file")->required();
  app.add_option("--weights", o.weights_path, "weight matrix JSON to use instead of the computed Gale dual");
  app.add_flag("--prefer-projective-subdivision", o.prefer_projective,
               "scan all simplicial subdivisions for a projective one before flipping");
  app.add_option("-o,--out", o.out_dir, "also write the result to DIR/<verb>.json");
  app.add_flag("-q,--quiet", o.quiet, "suppress human-readable log lines");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Fan f = io::fan_from_json(io::read_json_file(o.fan_path));
    json result = run_verb(o, f, exec_options_from_env());
    std::string text = io::dump(result);
    std::cout << text;
    if (!o.out_dir.empty()) {
      std::filesystem::create_directories(o.out_dir);
      std::ofstream out(std::filesystem::path(o.out_dir) / (o.verb + ".json"));
      if (!out) throw Error(ErrorCode::io, "cannot write to " + o.out_dir);
      out << text;
    }
    return 0;
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    return emit_error(Error(ErrorCode::internal, e.what()));
  }
}
