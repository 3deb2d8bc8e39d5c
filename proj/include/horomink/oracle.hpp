#pragma once

// Brute-force reference computations. These deliberately avoid the radial
// volume formula and the solver so that tests can check both against them.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "horomink/metric.hpp"
#include "horomink/polytope.hpp"
#include "horomink/random.hpp"
#include "horomink/solver.hpp"

namespace horomink::oracle {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Hyperbolic volume by sampling the Poincare ball: uniform points in the
/// Euclidean ball of radius tanh(R/2) weighted by (2 / (1 - |Y|^2))^{n+1},
/// with membership tested horoball by horoball on the hyperboloid.
inline McEstimate mc_volume(const HConvexPolytope& p, std::size_t samples, std::uint64_t seed) {
  if (samples < 10'000) throw SpecError("mc_volume needs at least 1e4 samples");
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  if (p.degenerate()) return est;
  const int dim = p.dim() + 1;
  const double outer = extremal_radii(p).outer + 1e-9;
  const double radius = std::tanh(0.5 * outer);
  const double box = unit_ball_volume(dim) * std::pow(radius, dim);
  CounterRng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vec dir = rng.unit_vector(dim);
    const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
    const Vec y = r * dir;
    const HyperboloidPoint x = from_ball(BallPoint(y));
    if (!polytope_contains(p.spec(), x)) continue;
    const double w = std::pow(2.0 / (1.0 - r * r), dim);
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  est.value = box * mean;
  est.std_error = box * std::sqrt(var / static_cast<double>(samples));
  return est;
}

/// Exhaustive search over the constraint slice for m <= 2 pairs. The slice
/// is parameterized by the angle psi of z / |z| in the positive quadrant,
/// psi_k = k (pi/2) / resolution for 0 < k < resolution (nested under
/// doubling), and each ray is rescaled onto the constraint.
inline std::vector<double> grid_search_even(const DiscreteMeasure& mu, double p, int resolution,
                                            double v0 = 1.0, const SphereQuadrature* quad = nullptr) {
  require_even(mu);
  const std::size_t m = mu.half();
  if (m > 2) throw SpecError("grid_search_even supports at most two direction pairs");
  if (resolution < 100) throw SpecError("grid resolution must be at least 100");
  const SphereQuadrature local = quad ? *quad : default_quadrature(mu.n);
  const ConstraintTarget target = p >= 0.0 ? ConstraintTarget{ConstraintTarget::Kind::Phi, 1.0}
                                           : ConstraintTarget{ConstraintTarget::Kind::Volume, v0};
  if (m == 1) return rescale_to_constraint({1.0}, mu, p, target, local);

  std::vector<Direction> dirs;
  for (std::size_t i = 0; i < m; ++i) dirs.push_back(mu.atoms[i].e);
  std::vector<double> best;
  double best_obj = 0.0;
  for (int k = 1; k < resolution; ++k) {
    const double psi = 0.5 * std::numbers::pi * k / resolution;
    std::vector<double> z;
    try {
      z = rescale_to_constraint({std::cos(psi), std::sin(psi)}, mu, p, target, local);
    } catch (const Unreachable&) {
      continue;
    }
    const double obj = p >= 0.0 ? volume_of(PolytopeSpec::even_from_half(dirs, z), local) : phi_p(z, mu, p);
    const bool better = best.empty() || (p >= 0.0 ? obj > best_obj : obj < best_obj);
    if (better) {
      best = z;
      best_obj = obj;
    }
  }
  if (best.empty()) throw Unreachable("no feasible grid point");
  return best;
}

}  // namespace horomink::oracle
