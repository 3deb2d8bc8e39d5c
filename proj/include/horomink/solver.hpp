#pragma once

// Discrete horospherical p-Minkowski problem for even measures.
//
// For mu = sum_{i<2m} a_i delta_{e_i} with e_{m+i} = -e_i and a_{m+i} = a_i we
// look for an origin-symmetric polytope P(z) = cap_i B_{e_i}(z_i) cap
// B_{-e_i}(z_i) and lambda > 0 with S(P, e_i) = lambda a_i e^{p z_i}, i.e.
// mu = S_p(P, .) / lambda.
//
//   p >= 0: maximize V(P(z)) subject to Phi_p(z) = 1.
//   p <  0: minimize Phi_p(z) subject to V(P(z)) = V0.
//
// Phi_p(z) = (1/p) sum_{i<2m} a_i (e^{p z_i} - 1), or sum a_i z_i at p = 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "horomink/facets.hpp"
#include "horomink/measure.hpp"
#include "horomink/polytope.hpp"
#include "horomink/t_body.hpp"

namespace horomink {

enum class GradientMode { Direct, FiniteDifference };

struct SolverConfig {
  double p = 0.0;
  /// Volume level for p < 0.
  double v0 = 1.0;
  /// Quadrature size for volumes and support scans; 0 picks the default.
  std::size_t quad_nodes = 0;
  /// Initial step length relative to max_i z_i.
  double step = 0.25;
  double backtrack = 0.5;
  int max_iters = 500;
  double tol = 1e-3;
  GradientMode gradient = GradientMode::Direct;
  double fd_delta = 1e-4;
  /// Compare direct and finite-difference gradients every this many
  /// iterations (0 disables).
  int gradient_check_every = 10;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(tol > 0.0)) throw SpecError("tolerance must be positive");
    if (max_iters < 1) throw SpecError("max_iters must be at least 1");
    if (!(step > 0.0)) throw SpecError("step must be positive");
    if (!(backtrack > 0.0 && backtrack < 1.0)) throw SpecError("backtrack factor must be in (0, 1)");
    if (!(fd_delta > 0.0)) throw SpecError("fd_delta must be positive");
    if (p < 0.0 && !(v0 > 0.0)) throw SpecError("V0 must be positive");
    if (!std::isfinite(p)) throw SpecError("p must be finite");
  }
};

/// Node set used by the solver for an n-dimensional problem.
inline SphereQuadrature solver_quadrature(int n, const SolverConfig& cfg) {
  if (cfg.quad_nodes == 0) return default_quadrature(n, cfg.seed);
  if (n == 1) return build_quadrature(1, cfg.quad_nodes, QuadratureKind::UniformGrid);
  if (n == 2) return build_quadrature(2, cfg.quad_nodes, QuadratureKind::ProductRule);
  return build_quadrature(n, cfg.quad_nodes, QuadratureKind::MonteCarlo, cfg.seed);
}

struct ResidualReport {
  double lambda;
  double max_rel;
};

struct SolverResult {
  HConvexPolytope polytope;
  std::vector<double> z{};
  double lambda = 0.0;
  double residual_max_rel = std::numeric_limits<double>::infinity();
  std::vector<double> objective_trace{};
  int iterations = 0;
  bool converged = false;
  double volume = 0.0;
  std::vector<double> facet_areas{};
  /// Largest relative gap between direct and finite-difference gradients
  /// seen at the spot checks.
  double gradient_discrepancy = 0.0;
  /// p < 0 only: the a-priori support bound for volume V0 (1 + 1e-2), and
  /// whether some iterate exceeded it.
  double support_bound = 0.0;
  bool bound_violated = false;
  /// Some z_i fell below 1e-8 max z during the run.
  bool near_boundary = false;
};

inline void require_even(const DiscreteMeasure& mu) {
  if (!mu.even || !mu.is_even_layout()) throw NotEven("the solver requires an even measure in paired layout");
}

/// Phi_p on the paired half z (each term counted twice).
inline double phi_p(const std::vector<double>& z, const DiscreteMeasure& mu, double p) {
  require_even(mu);
  const std::size_t m = mu.half();
  if (z.size() != m) throw SpecError("phi_p expects one value per direction pair");
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (z[i] < 0.0) throw SpecError("phi_p requires z >= 0");
    acc += p == 0.0 ? mu.atoms[i].a * z[i] : mu.atoms[i].a * std::expm1(p * z[i]) / p;
  }
  return 2.0 * acc;
}

/// Constraint level to reach by rescaling z -> t z.
struct ConstraintTarget {
  enum class Kind { Phi, Volume };
  Kind kind;
  double level;
};

namespace detail {

inline std::vector<Direction> half_directions(const DiscreteMeasure& mu) {
  std::vector<Direction> dirs;
  for (std::size_t i = 0; i < mu.half(); ++i) dirs.push_back(mu.atoms[i].e);
  return dirs;
}

inline std::vector<double> scaled(const std::vector<double>& z, double t) {
  std::vector<double> out(z);
  for (double& v : out) v *= t;
  return out;
}

}  // namespace detail

/// t z with t > 0 chosen so the target functional equals its level: within
/// 1e-8 for Phi_p and 1e-10 relative for the volume. Throws Unreachable when
/// no t exists.
inline std::vector<double> rescale_to_constraint(const std::vector<double>& z, const DiscreteMeasure& mu, double p,
                                                 const ConstraintTarget& target,
                                                 const SphereQuadrature& quad) {
  require_even(mu);
  if (z.size() != mu.half()) throw SpecError("one value per direction pair expected");
  if (std::any_of(z.begin(), z.end(), [](double v) { return !(v > 0.0); }))
    throw SpecError("rescaling requires z > 0");
  if (!(target.level > 0.0)) throw Unreachable("constraint level must be positive");

  if (target.kind == ConstraintTarget::Kind::Phi) {
    const double c = target.level;
    if (p == 0.0) return detail::scaled(z, c / phi_p(z, mu, 0.0));
    if (p < 0.0) {
      double cap = 0.0;
      for (std::size_t i = 0; i < mu.half(); ++i) cap += 2.0 * mu.atoms[i].a;
      if (c >= cap / -p) throw Unreachable("Phi_p is bounded by sum a_i / |p| for p < 0");
    }
    auto f = [&](double t) { return phi_p(detail::scaled(z, t), mu, p) - c; };
    double lo = 0.0, hi = 1.0;
    while (f(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw Unreachable("Phi_p level not reached");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
    return detail::scaled(z, t);
  }

  // Volume: Newton on t with dV/dt = sum_i S_i x_i, safeguarded by a bracket.
  const std::vector<Direction> dirs = detail::half_directions(mu);
  const double c = target.level;
  auto vol = [&](double t) { return volume_of(PolytopeSpec::even_from_half(dirs, detail::scaled(z, t)), quad); };
  auto dvol = [&](double t) {
    const PolytopeSpec spec = PolytopeSpec::even_from_half(dirs, detail::scaled(z, t));
    const std::vector<double> areas = facet_areas_of(spec);
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) acc += areas[i] * spec.horoballs[i].s;
    return acc / t;
  };
  double lo = 0.0, hi = 1.0;
  double vhi = vol(hi);
  while (vhi < c) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw Unreachable("volume level not reached");
    vhi = vol(hi);
  }
  double t = hi;
  double vt = vhi;
  for (int it = 0; it < 100; ++it) {
    if (std::abs(vt - c) <= 1e-12 * c) break;
    if (vt < c) lo = t;
    else hi = t;
    double next = t;
    const double slope = dvol(t);
    if (slope > 0.0) next = t - (vt - c) / slope;
    if (!(next > lo && next < hi)) next = lo > 0.0 ? 0.5 * (lo + hi) : 0.5 * hi;
    t = next;
    vt = vol(t);
    if (hi - lo < 1e-15 * hi) break;
  }
  if (std::abs(vt - c) > 1e-10 * c) throw Unreachable("volume rescaling did not converge");
  return detail::scaled(z, t);
}

/// lambda = sum S_i / sum a_i e^{p u_i} and the largest relative gap
/// |e^{-p u_i} S_i - lambda a_i| / (lambda a_i) over the atoms of mu.
inline ResidualReport residual(const HConvexPolytope& poly, const DiscreteMeasure& mu, double p,
                               const FacetOptions& opt = {}) {
  if (poly.degenerate()) throw DegenerateBody("residual of the point body");
  std::vector<std::size_t> match(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    bool found = false;
    for (std::size_t i = 0; i < poly.size() && !found; ++i) {
      if ((poly.spec().horoballs[i].center.vec() - mu.atoms[k].e.vec()).norm() <= 1e-9) {
        match[k] = i;
        found = true;
      }
    }
    if (!found) throw MismatchedDirections("atom " + std::to_string(k) + " has no matching polytope direction");
  }
  std::vector<double> areas(mu.size()), u(mu.size());
  double total_area = 0.0, total_weight = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    areas[k] = facet_area(poly, match[k], opt);
    u[k] = poly.canonical_support()[match[k]];
    total_area += areas[k];
    total_weight += mu.atoms[k].a * std::exp(p * u[k]);
  }
  const double lambda = total_area / total_weight;
  double worst = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double want = lambda * mu.atoms[k].a;
    worst = std::max(worst, std::abs(std::exp(-p * u[k]) * areas[k] - want) / want);
  }
  return {lambda, worst};
}

namespace detail {

class EvenSolver {
 public:
  EvenSolver(const DiscreteMeasure& mu, const SolverConfig& cfg)
      : mu_(mu), cfg_(cfg), dirs_(half_directions(mu)), quad_(solver_quadrature(mu.n, cfg)) {
    facet_opt_.seed = cfg.seed;
  }

  SolverResult run() {
    const std::size_t m = mu_.half();
    const bool maximize_volume = cfg_.p >= 0.0;
    const ConstraintTarget target = maximize_volume ? ConstraintTarget{ConstraintTarget::Kind::Phi, 1.0}
                                                    : ConstraintTarget{ConstraintTarget::Kind::Volume, cfg_.v0};
    double bound = 0.0;
    if (!maximize_volume) bound = boundedness_bound(cfg_.v0 * (1.0 + 1e-2), mu_.n);

    std::vector<double> z = rescale_to_constraint(std::vector<double>(m, 1.0), mu_, cfg_.p, target, quad_);
    double obj = objective(z);
    SolverResult res{.polytope = build_polytope(spec_of(z), quad_)};
    res.z = z;
    res.objective_trace = {obj};
    res.support_bound = bound;

    double alpha = cfg_.step;
    int it = 0;
    for (; it < cfg_.max_iters; ++it) {
      const std::vector<double> s_half = paired_areas(z);
      const auto [lambda, rel] = residual_of(z, s_half);
      if (rel <= cfg_.tol) {
        res.converged = true;
        break;
      }
      if (cfg_.gradient_check_every > 0 && it % cfg_.gradient_check_every == 0)
        res.gradient_discrepancy = std::max(res.gradient_discrepancy, gradient_gap(z));

      // gV_i = S_i + S_{m+i}; gPhi_i = 2 a_i e^{p z_i}.
      Vec gv(m), gphi(m);
      for (std::size_t i = 0; i < m; ++i) {
        gv[i] = s_half[i];
        gphi[i] = 2.0 * mu_.atoms[i].a * std::exp(cfg_.p * z[i]);
      }
      Vec dir = maximize_volume ? Vec(gv - (gv.dot(gphi) / gphi.squaredNorm()) * gphi)
                                : Vec(-(gphi - (gphi.dot(gv) / gv.squaredNorm()) * gv));
      // Componentwise scaling by z keeps the step relative to each coordinate.
      for (std::size_t i = 0; i < m; ++i) dir[i] *= z[i];
      const double zmax = *std::max_element(z.begin(), z.end());
      const double dnorm = dir.cwiseAbs().maxCoeff();
      if (!(dnorm > 0.0)) break;

      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        const double scale = alpha * zmax / dnorm;
        std::vector<double> trial(m);
        for (std::size_t i = 0; i < m; ++i) trial[i] = std::max(z[i] + scale * dir[i], 0.05 * z[i]);
        try {
          trial = admissible(trial);
          trial = rescale_to_constraint(trial, mu_, cfg_.p, target, quad_);
        } catch (const Unreachable&) {
          alpha *= cfg_.backtrack;
          continue;
        }
        const double tobj = objective(trial);
        const bool better = maximize_volume ? tobj > obj : tobj < obj;
        if (better) {
          z = std::move(trial);
          obj = tobj;
          accepted = true;
          alpha = std::min(alpha * 1.5, 0.5);
          break;
        }
        alpha *= cfg_.backtrack;
      }
      if (!accepted) break;
      res.objective_trace.push_back(obj);
      if (!maximize_volume && *std::max_element(z.begin(), z.end()) > bound) res.bound_violated = true;
      if (*std::min_element(z.begin(), z.end()) < 1e-8 * *std::max_element(z.begin(), z.end()))
        res.near_boundary = true;
    }
    res.iterations = it;
    finish(res, z);
    return res;
  }

 private:
  PolytopeSpec spec_of(const std::vector<double>& z) const { return PolytopeSpec::even_from_half(dirs_, z); }

  double objective(const std::vector<double>& z) const {
    return cfg_.p >= 0.0 ? volume_of(spec_of(z), quad_) : phi_p(z, mu_, cfg_.p);
  }

  /// Canonical half vector: x_i replaced by u(P, e_i).
  std::vector<double> admissible(const std::vector<double>& z) const {
    const PolytopeSpec canon = canonicalize(spec_of(z), quad_);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = canon.horoballs[i].s;
    return out;
  }

  std::vector<double> direct_areas(const std::vector<double>& z) const {
    return facet_areas_of(spec_of(z), facet_opt_);
  }

  /// dV/dz_i = S_i + S_{m+i}.
  std::vector<double> paired_areas(const std::vector<double>& z) const {
    const std::size_t m = z.size();
    std::vector<double> out(m);
    if (cfg_.gradient == GradientMode::Direct) {
      const std::vector<double> s = direct_areas(z);
      for (std::size_t i = 0; i < m; ++i) out[i] = s[i] + s[m + i];
    } else {
      for (std::size_t i = 0; i < m; ++i) out[i] = fd_paired(z, i);
    }
    return out;
  }

  double fd_paired(const std::vector<double>& z, std::size_t i) const {
    const double delta = std::min(cfg_.fd_delta, 0.5 * z[i]);
    std::vector<double> plus = z, minus = z;
    plus[i] += delta;
    minus[i] -= delta;
    return (volume_of(spec_of(plus), quad_) - volume_of(spec_of(minus), quad_)) / (2.0 * delta);
  }

  double gradient_gap(const std::vector<double>& z) const {
    const std::vector<double> s = direct_areas(z);
    const std::size_t m = z.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double direct = s[i] + s[m + i];
      worst = std::max(worst, std::abs(direct - fd_paired(z, i)) / std::max(direct, 1e-8));
    }
    return worst;
  }

  /// Optimality gap from half-vector areas (S_i + S_{m+i} = 2 S_i).
  ResidualReport residual_of(const std::vector<double>& z, const std::vector<double>& s_half) const {
    double total_area = 0.0, total_weight = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      total_area += s_half[i];
      total_weight += 2.0 * mu_.atoms[i].a * std::exp(cfg_.p * z[i]);
    }
    const double lambda = total_area / total_weight;
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double want = lambda * mu_.atoms[i].a;
      worst = std::max(worst, std::abs(0.5 * s_half[i] * std::exp(-cfg_.p * z[i]) - want) / want);
    }
    return {lambda, worst};
  }

  void finish(SolverResult& res, const std::vector<double>& z) const {
    res.z = z;
    res.polytope = build_polytope(spec_of(z), quad_);
    const ResidualReport rep = residual(res.polytope, mu_, cfg_.p, facet_opt_);
    res.lambda = rep.lambda;
    res.residual_max_rel = rep.max_rel;
    res.converged = rep.max_rel <= cfg_.tol;
    res.volume = volume(res.polytope, quad_);
    res.facet_areas.clear();
    for (std::size_t i = 0; i < res.polytope.size(); ++i) res.facet_areas.push_back(facet_area(res.polytope, i, facet_opt_));
  }

  const DiscreteMeasure& mu_;
  SolverConfig cfg_;
  std::vector<Direction> dirs_;
  SphereQuadrature quad_;
  FacetOptions facet_opt_;
};

}  // namespace detail

/// Solves for the even polytope whose p-surface area measure is a multiple
/// of mu. Throws NotEven for non-even input. On failure to reach the
/// tolerance the best iterate is returned with converged = false.
inline SolverResult solve_even(const DiscreteMeasure& mu, const SolverConfig& cfg) {
  cfg.validate();
  mu.validate();
  require_even(mu);
  if (mu.half() < 2) throw SpecError("the solver needs at least two direction pairs");
  return detail::EvenSolver(mu, cfg).run();
}

}  // namespace horomink
