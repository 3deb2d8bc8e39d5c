#pragma once

// JSON files exchanged by the command-line tool. Every document carries
// "schema_version": "1" and unknown fields are rejected.
//
// Instance:  { schema_version, n, p, V0?, even, atoms: [{direction, weight}],
//              solver? }
// Solution:  { schema_version, n, p, directions, z, lambda, residual_max_rel,
//              volume, facet_areas, iterations, converged, config }
// Polytope:  { schema_version, n, even, horoballs: [{direction, value}] }

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "horomink/measure.hpp"
#include "horomink/polytope.hpp"
#include "horomink/solver.hpp"

namespace horomink::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Malformed or unexpected JSON content. The message names the field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed,
                       const std::set<std::string>& required) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw SchemaError(where + ": unknown field '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
}

inline void check_version(const json& obj, const std::string& where) {
  const json& v = obj.at("schema_version");
  if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
    throw SchemaError(where + ".schema_version: expected \"1\"");
}

inline double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(where + "." + key + ": expected a number");
  return v.get<double>();
}

inline std::int64_t integer(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw SchemaError(where + "." + key + ": expected an integer");
  return v.get<std::int64_t>();
}

inline bool boolean(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw SchemaError(where + "." + key + ": expected a boolean");
  return v.get<bool>();
}

inline std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw SchemaError(where + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

/// Normalizes the direction; rejects ones that are not unit within 1e-9.
inline Direction direction(const json& v, int n, const std::string& where) {
  const std::vector<double> c = numbers(v, where);
  if (static_cast<int>(c.size()) != n + 1)
    throw SchemaError(where + ": expected " + std::to_string(n + 1) + " components");
  const Vec vec = Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size()));
  if (std::abs(vec.norm() - 1.0) > 1e-9) throw SchemaError(where + ": direction is not a unit vector");
  return Direction::normalized(vec);
}

inline json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline int dimension(const json& obj, const std::string& where) {
  const std::int64_t n = integer(obj, "n", where);
  if (n < 1 || n > 64) throw SchemaError(where + ".n: expected an integer in [1, 64]");
  return static_cast<int>(n);
}

}  // namespace detail

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "': invalid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << text;
}

struct Instance {
  int n = 1;
  double p = 0.0;
  std::optional<double> v0;
  DiscreteMeasure measure;
  SolverConfig solver;
};

inline void apply_solver_overrides(const json& obj, SolverConfig& cfg, const std::string& where) {
  detail::check_keys(obj, where,
                     {"tol", "max_iters", "quad_nodes", "seed", "step", "backtrack", "gradient", "fd_delta",
                      "gradient_check_every"},
                     {});
  if (obj.contains("tol")) cfg.tol = detail::number(obj, "tol", where);
  if (obj.contains("max_iters")) cfg.max_iters = static_cast<int>(detail::integer(obj, "max_iters", where));
  if (obj.contains("quad_nodes")) {
    const auto q = detail::integer(obj, "quad_nodes", where);
    if (q < 0) throw SchemaError(where + ".quad_nodes: expected a non-negative integer");
    cfg.quad_nodes = static_cast<std::size_t>(q);
  }
  if (obj.contains("seed")) {
    const auto s = detail::integer(obj, "seed", where);
    if (s < 0) throw SchemaError(where + ".seed: expected a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (obj.contains("step")) cfg.step = detail::number(obj, "step", where);
  if (obj.contains("backtrack")) cfg.backtrack = detail::number(obj, "backtrack", where);
  if (obj.contains("fd_delta")) cfg.fd_delta = detail::number(obj, "fd_delta", where);
  if (obj.contains("gradient_check_every"))
    cfg.gradient_check_every = static_cast<int>(detail::integer(obj, "gradient_check_every", where));
  if (obj.contains("gradient")) {
    const json& g = obj.at("gradient");
    if (g == "direct") cfg.gradient = GradientMode::Direct;
    else if (g == "fd") cfg.gradient = GradientMode::FiniteDifference;
    else throw SchemaError(where + ".gradient: expected \"direct\" or \"fd\"");
  }
}

inline json solver_config_json(const SolverConfig& cfg) {
  return json{{"p", cfg.p},
              {"V0", cfg.v0},
              {"tol", cfg.tol},
              {"max_iters", cfg.max_iters},
              {"quad_nodes", cfg.quad_nodes},
              {"seed", cfg.seed},
              {"step", cfg.step},
              {"backtrack", cfg.backtrack},
              {"gradient", cfg.gradient == GradientMode::Direct ? "direct" : "fd"},
              {"fd_delta", cfg.fd_delta},
              {"gradient_check_every", cfg.gradient_check_every}};
}

inline SolverConfig parse_solver_config(const json& obj, const std::string& where) {
  detail::check_keys(obj, where,
                     {"p", "V0", "tol", "max_iters", "quad_nodes", "seed", "step", "backtrack", "gradient",
                      "fd_delta", "gradient_check_every"},
                     {"p", "V0"});
  SolverConfig cfg;
  cfg.p = detail::number(obj, "p", where);
  cfg.v0 = detail::number(obj, "V0", where);
  json rest = obj;
  rest.erase("p");
  rest.erase("V0");
  apply_solver_overrides(rest, cfg, where);
  return cfg;
}

/// Parses an instance document. Even measures are reordered into the paired
/// layout; a measure flagged even without antipodal pairing is a schema error.
inline Instance parse_instance(const json& doc) {
  const std::string where = "instance";
  detail::check_keys(doc, where, {"schema_version", "n", "p", "V0", "atoms", "even", "solver"},
                     {"schema_version", "n", "p", "atoms", "even"});
  detail::check_version(doc, where);
  Instance inst;
  inst.n = detail::dimension(doc, where);
  inst.p = detail::number(doc, "p", where);
  if (doc.contains("V0")) {
    inst.v0 = detail::number(doc, "V0", where);
    if (!(*inst.v0 > 0.0)) throw SchemaError(where + ".V0: expected a positive number");
  }
  const json& atoms = doc.at("atoms");
  if (!atoms.is_array() || atoms.empty()) throw SchemaError(where + ".atoms: expected a non-empty array");
  DiscreteMeasure mu;
  mu.n = inst.n;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string at = where + ".atoms[" + std::to_string(i) + "]";
    detail::check_keys(atoms[i], at, {"direction", "weight"}, {"direction", "weight"});
    const double w = detail::number(atoms[i], "weight", at);
    if (!(w > 0.0)) throw SchemaError(at + ".weight: expected a positive number");
    mu.atoms.push_back({detail::direction(atoms[i].at("direction"), inst.n, at + ".direction"), w});
  }
  const bool even = detail::boolean(doc, "even", where);
  try {
    mu.validate();
    if (even) mu = pair_even(mu);
  } catch (const Error& e) {
    throw SchemaError(where + ".atoms: " + e.what());
  }
  inst.measure = mu;
  inst.solver.p = inst.p;
  if (inst.v0) inst.solver.v0 = *inst.v0;
  if (doc.contains("solver")) apply_solver_overrides(doc.at("solver"), inst.solver, where + ".solver");
  return inst;
}

struct Solution {
  int n = 1;
  double p = 0.0;
  std::vector<Direction> directions;  // the paired half e_1..e_m
  std::vector<double> z;
  double lambda = 0.0;
  double residual_max_rel = 0.0;
  double volume = 0.0;
  std::vector<double> facet_areas;
  int iterations = 0;
  bool converged = false;
  SolverConfig config;

  PolytopeSpec spec() const { return PolytopeSpec::even_from_half(directions, z); }
};

inline Solution solution_from_result(const SolverResult& res, const DiscreteMeasure& mu, const SolverConfig& cfg) {
  Solution s;
  s.n = mu.n;
  s.p = cfg.p;
  for (std::size_t i = 0; i < mu.half(); ++i) s.directions.push_back(mu.atoms[i].e);
  s.z = res.z;
  s.lambda = res.lambda;
  s.residual_max_rel = res.residual_max_rel;
  s.volume = res.volume;
  s.facet_areas = res.facet_areas;
  s.iterations = res.iterations;
  s.converged = res.converged;
  s.config = cfg;
  return s;
}

inline json solution_json(const Solution& s) {
  json dirs = json::array();
  for (const auto& d : s.directions) dirs.push_back(detail::vec_json(d.vec()));
  return json{{"schema_version", kSchemaVersion},
              {"n", s.n},
              {"p", s.p},
              {"directions", dirs},
              {"z", s.z},
              {"lambda", s.lambda},
              {"residual_max_rel", s.residual_max_rel},
              {"volume", s.volume},
              {"facet_areas", s.facet_areas},
              {"iterations", s.iterations},
              {"converged", s.converged},
              {"config", solver_config_json(s.config)}};
}

inline Solution parse_solution(const json& doc) {
  const std::string where = "solution";
  detail::check_keys(doc, where,
                     {"schema_version", "n", "p", "directions", "z", "lambda", "residual_max_rel", "volume",
                      "facet_areas", "iterations", "converged", "config"},
                     {"schema_version", "n", "p", "directions", "z"});
  detail::check_version(doc, where);
  Solution s;
  s.n = detail::dimension(doc, where);
  s.p = detail::number(doc, "p", where);
  const json& dirs = doc.at("directions");
  if (!dirs.is_array() || dirs.empty()) throw SchemaError(where + ".directions: expected a non-empty array");
  for (std::size_t i = 0; i < dirs.size(); ++i)
    s.directions.push_back(detail::direction(dirs[i], s.n, where + ".directions[" + std::to_string(i) + "]"));
  s.z = detail::numbers(doc.at("z"), where + ".z");
  if (s.z.size() != s.directions.size()) throw SchemaError(where + ".z: expected one value per direction");
  for (double v : s.z)
    if (!(v > 0.0)) throw SchemaError(where + ".z: expected positive values");
  if (doc.contains("lambda")) s.lambda = detail::number(doc, "lambda", where);
  if (doc.contains("residual_max_rel")) s.residual_max_rel = detail::number(doc, "residual_max_rel", where);
  if (doc.contains("volume")) s.volume = detail::number(doc, "volume", where);
  if (doc.contains("facet_areas")) s.facet_areas = detail::numbers(doc.at("facet_areas"), where + ".facet_areas");
  if (doc.contains("iterations")) s.iterations = static_cast<int>(detail::integer(doc, "iterations", where));
  if (doc.contains("converged")) s.converged = detail::boolean(doc, "converged", where);
  s.config.p = s.p;
  if (doc.contains("config")) s.config = parse_solver_config(doc.at("config"), where + ".config");
  return s;
}

inline PolytopeSpec parse_polytope(const json& doc) {
  const std::string where = "polytope";
  detail::check_keys(doc, where, {"schema_version", "n", "even", "horoballs"}, {"schema_version", "n", "horoballs"});
  detail::check_version(doc, where);
  PolytopeSpec spec;
  spec.n = detail::dimension(doc, where);
  if (doc.contains("even")) spec.even = detail::boolean(doc, "even", where);
  const json& hbs = doc.at("horoballs");
  if (!hbs.is_array()) throw SchemaError(where + ".horoballs: expected an array");
  for (std::size_t i = 0; i < hbs.size(); ++i) {
    const std::string at = where + ".horoballs[" + std::to_string(i) + "]";
    detail::check_keys(hbs[i], at, {"direction", "value"}, {"direction", "value"});
    spec.horoballs.push_back({detail::direction(hbs[i].at("direction"), spec.n, at + ".direction"),
                              detail::number(hbs[i], "value", at)});
  }
  return spec;
}

inline json polytope_json(const PolytopeSpec& spec) {
  json hbs = json::array();
  for (const auto& hb : spec.horoballs) hbs.push_back({{"direction", detail::vec_json(hb.center.vec())}, {"value", hb.s}});
  return json{{"schema_version", kSchemaVersion}, {"n", spec.n}, {"even", spec.even}, {"horoballs", hbs}};
}

}  // namespace horomink::io
