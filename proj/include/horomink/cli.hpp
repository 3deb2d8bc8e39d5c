#pragma once

// Command-line front end. Kept in a header so that tests can drive it
// in-process; tools/horomink.cpp only forwards main().
//
// Exit codes: 0 ok, 2 bad input, 3 no convergence / not certified,
// 4 geometric failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "horomink/facets.hpp"
#include "horomink/io.hpp"
#include "horomink/metric.hpp"
#include "horomink/oracle.hpp"
#include "horomink/render.hpp"
#include "horomink/solver.hpp"

namespace horomink::cli {

enum ExitCode : int { kOk = 0, kSchema = 2, kNoConvergence = 3, kGeometry = 4 };

namespace detail {

struct BodySource {
  std::string polytope;
  std::string solution;
  std::size_t quad_nodes = 0;
  std::uint64_t seed = 0;
};

inline void add_body_options(CLI::App* sub, BodySource& src, const std::string& prefix = "") {
  auto* a = sub->add_option("--" + prefix + "polytope", src.polytope, "polytope JSON file");
  auto* b = sub->add_option("--" + prefix + "solution", src.solution, "solution JSON file");
  a->excludes(b);
}

struct LoadedBody {
  PolytopeSpec spec;
  SphereQuadrature quad;
  FacetOptions facets;
};

inline LoadedBody load_body(const BodySource& src, std::size_t quad_nodes, std::uint64_t seed) {
  if (src.polytope.empty() == src.solution.empty())
    throw io::SchemaError("exactly one of --polytope / --solution is required");
  SolverConfig cfg;
  cfg.quad_nodes = quad_nodes;
  cfg.seed = seed;
  PolytopeSpec spec;
  if (!src.polytope.empty()) {
    spec = io::parse_polytope(io::read_json_file(src.polytope));
  } else {
    const io::Solution sol = io::parse_solution(io::read_json_file(src.solution));
    spec = sol.spec();
    if (quad_nodes == 0) cfg.quad_nodes = sol.config.quad_nodes;
    cfg.seed = sol.config.seed;
  }
  spec.validate();
  LoadedBody out{spec, solver_quadrature(spec.n, cfg), FacetOptions{}};
  out.facets.seed = cfg.seed;
  return out;
}

inline Direction parse_direction(const std::vector<double>& c, int n, const std::string& flag) {
  if (static_cast<int>(c.size()) != n + 1)
    throw io::SchemaError(flag + ": expected " + std::to_string(n + 1) + " components");
  const Vec v = Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size()));
  if (!(v.norm() > 0.0)) throw io::SchemaError(flag + ": zero vector");
  return Direction::normalized(v);
}

inline Model parse_model(const std::string& s) {
  if (s == "hyperboloid") return Model::Hyperboloid;
  if (s == "ball") return Model::Ball;
  if (s == "halfspace") return Model::HalfSpace;
  throw io::SchemaError("--model: expected hyperboloid, ball or halfspace");
}

inline HyperboloidPoint parse_point(const std::vector<double>& c, int n, Model model) {
  const Vec v = Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size()));
  const auto want = static_cast<std::size_t>(model == Model::Hyperboloid ? n + 2 : n + 1);
  if (c.size() != want) throw io::SchemaError("--point: expected " + std::to_string(want) + " coordinates");
  try {
    switch (model) {
      case Model::Hyperboloid: return HyperboloidPoint(v);
      case Model::Ball: return to_hyperboloid(BallPoint(v));
      case Model::HalfSpace: return to_hyperboloid(HalfSpacePoint(v.head(n), v[n]));
    }
  } catch (const SpecError& e) {
    throw io::SchemaError(std::string("--point: ") + e.what());
  }
  throw io::SchemaError("--point: unknown model");
}

}  // namespace detail

/// Runs the tool. JSON results are written to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Horospherical Minkowski problem toolkit"};
  app.require_subcommand(1);

  int code = kOk;
  auto emit = [&](const nlohmann::json& j) { out << j.dump(2) << '\n'; };

  // solve
  std::string solve_in, solve_out;
  std::optional<double> o_p, o_v0, o_tol;
  std::optional<int> o_iters;
  std::optional<std::size_t> o_quad;
  std::optional<std::uint64_t> o_seed;
  auto* solve = app.add_subcommand("solve", "solve an even instance");
  solve->add_option("--input", solve_in, "instance JSON")->required();
  solve->add_option("--output", solve_out, "solution JSON")->required();
  solve->add_option("--p", o_p);
  solve->add_option("--v0", o_v0);
  solve->add_option("--tol", o_tol);
  solve->add_option("--max-iters", o_iters);
  solve->add_option("--quad-nodes", o_quad);
  solve->add_option("--seed", o_seed);
  solve->callback([&] {
    io::Instance inst = io::parse_instance(io::read_json_file(solve_in));
    SolverConfig cfg = inst.solver;
    if (o_p) cfg.p = *o_p;
    if (o_v0) cfg.v0 = *o_v0;
    if (o_tol) cfg.tol = *o_tol;
    if (o_iters) cfg.max_iters = *o_iters;
    if (o_quad) cfg.quad_nodes = *o_quad;
    if (o_seed) cfg.seed = *o_seed;
    try {
      cfg.validate();
    } catch (const SpecError& e) {
      throw io::SchemaError(std::string("solver configuration: ") + e.what());
    }
    const SolverResult res = solve_even(inst.measure, cfg);
    const io::Solution sol = io::solution_from_result(res, inst.measure, cfg);
    io::write_text_file(solve_out, io::solution_json(sol).dump(2) + "\n");
    emit({{"converged", res.converged}, {"iterations", res.iterations}, {"residual_max_rel", res.residual_max_rel}});
    if (!res.converged) {
      err << "solver did not converge: residual " << res.residual_max_rel << " > tol " << cfg.tol << '\n';
      code = kNoConvergence;
    }
  });

  // check
  std::string check_inst, check_sol;
  auto* check = app.add_subcommand("check", "recompute the residual of a solution");
  check->add_option("--instance", check_inst)->required();
  check->add_option("--solution", check_sol)->required();
  check->callback([&] {
    const io::Instance inst = io::parse_instance(io::read_json_file(check_inst));
    const io::Solution sol = io::parse_solution(io::read_json_file(check_sol));
    if (sol.n != inst.n) throw io::SchemaError("solution.n: does not match the instance");
    const PolytopeSpec spec = sol.spec();
    spec.validate();
    const HConvexPolytope poly = build_polytope(spec, solver_quadrature(sol.n, sol.config));
    FacetOptions fo;
    fo.seed = sol.config.seed;
    const ResidualReport rep = residual(poly, inst.measure, sol.config.p, fo);
    const bool ok = rep.max_rel <= sol.config.tol;
    emit({{"lambda", rep.lambda}, {"residual_max_rel", rep.max_rel}, {"tol", sol.config.tol}, {"certified", ok}});
    if (!ok) code = kNoConvergence;
  });

  // volume / facets / support / oracle-volume on one body
  detail::BodySource vol_src, fac_src, sup_src, orc_src;
  std::size_t quad_nodes = 0, samples = 1'000'000;
  std::uint64_t seed = 0;
  auto* vol = app.add_subcommand("volume", "hyperbolic volume of a polytope");
  detail::add_body_options(vol, vol_src);
  vol->add_option("--quad-nodes", quad_nodes);
  vol->callback([&] {
    const auto b = detail::load_body(vol_src, quad_nodes, seed);
    emit({{"volume", volume_of(b.spec, b.quad)}, {"quad_nodes", b.quad.size()}});
  });

  auto* fac = app.add_subcommand("facets", "canonical support values and facet areas");
  detail::add_body_options(fac, fac_src);
  fac->add_option("--samples", samples, "Monte-Carlo samples for n >= 2");
  fac->add_option("--seed", seed);
  fac->callback([&] {
    auto b = detail::load_body(fac_src, 0, seed);
    b.facets.samples = samples;
    const HConvexPolytope p = build_polytope(b.spec, b.quad);
    std::vector<double> areas;
    std::vector<bool> nonempty = p.facet_nonempty();
    for (std::size_t i = 0; i < p.size(); ++i) areas.push_back(facet_area(p, i, b.facets));
    emit({{"canonical_support", p.canonical_support()}, {"nonempty", nonempty}, {"facet_areas", areas}});
  });

  std::vector<double> direction;
  auto* sup = app.add_subcommand("support", "horospherical support value in a direction");
  detail::add_body_options(sup, sup_src);
  sup->add_option("--direction", direction, "comma-separated unit vector")->required()->delimiter(',');
  sup->callback([&] {
    const auto b = detail::load_body(sup_src, 0, 0);
    const HConvexPolytope p = build_polytope(b.spec, b.quad);
    const Direction e = detail::parse_direction(direction, b.spec.n, "--direction");
    emit({{"support", support(p, e)}, {"radial", radial(p, e)}});
  });

  std::size_t mc_samples = 1'000'000;
  std::uint64_t mc_seed = 0;
  auto* orc = app.add_subcommand("oracle-volume", "Monte-Carlo volume estimate in the ball model");
  detail::add_body_options(orc, orc_src);
  orc->add_option("--samples", mc_samples);
  orc->add_option("--seed", mc_seed);
  orc->callback([&] {
    const auto b = detail::load_body(orc_src, 0, 0);
    const auto est = oracle::mc_volume(build_polytope(b.spec, b.quad), mc_samples, mc_seed);
    emit({{"volume", est.value}, {"std_error", est.std_error}, {"samples", est.samples}, {"seed", est.seed}});
  });

  // hausdorff
  detail::BodySource ha, hb;
  auto* hau = app.add_subcommand("hausdorff", "Hausdorff distance between two polytopes");
  detail::add_body_options(hau, ha, "a-");
  detail::add_body_options(hau, hb, "b-");
  hau->callback([&] {
    const auto a = detail::load_body(ha, 0, 0);
    const auto b = detail::load_body(hb, 0, 0);
    if (a.spec.n != b.spec.n) throw io::SchemaError("b: dimension differs from a");
    emit({{"hausdorff", hausdorff_distance(build_polytope(a.spec, a.quad), build_polytope(b.spec, b.quad), a.quad)}});
  });

  // separate
  detail::BodySource sep_src;
  std::vector<double> point;
  std::string model = "hyperboloid";
  auto* sep = app.add_subcommand("separate", "horoball containing the polytope and excluding a point");
  detail::add_body_options(sep, sep_src);
  sep->add_option("--point", point, "comma-separated coordinates")->required()->delimiter(',');
  sep->add_option("--model", model, "hyperboloid | ball | halfspace");
  sep->callback([&] {
    const auto b = detail::load_body(sep_src, 0, 0);
    const HyperboloidPoint q = detail::parse_point(point, b.spec.n, detail::parse_model(model));
    const Horoball h = separate(build_polytope(b.spec, b.quad), q);
    emit({{"direction", io::detail::vec_json(h.center.vec())}, {"value", h.s}});
  });

  // render
  std::string render_sol, render_svg_path;
  auto* ren = app.add_subcommand("render", "SVG of an n = 1 solution in the Poincare disk");
  ren->add_option("--solution", render_sol)->required();
  ren->add_option("--svg", render_svg_path)->required();
  ren->callback([&] {
    const io::Solution sol = io::parse_solution(io::read_json_file(render_sol));
    if (sol.n != 1) throw io::SchemaError("solution.n: rendering requires n = 1");
    const HConvexPolytope p = build_polytope(sol.spec(), solver_quadrature(1, sol.config));
    io::write_text_file(render_svg_path, render_svg(p));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kSchema;
  } catch (const io::SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const NotEven& e) {
    err << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const SpecError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kSchema;
  } catch (const Error& e) {
    err << "geometry error: " << e.what() << '\n';
    return kGeometry;
  }
  return code;
}

}  // namespace horomink::cli
