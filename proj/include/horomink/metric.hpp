#pragma once

// Support-function geometry of polytopes: Hausdorff distance, outer parallel
// bodies and separating horoballs.

#include <algorithm>
#include <cmath>
#include <vector>

#include "horomink/detail/search.hpp"
#include "horomink/horoball.hpp"
#include "horomink/polytope.hpp"

namespace horomink {

/// d_H(K, L) = max_e |u(K, e) - u(L, e)|, scanned over the nodes of `quad`
/// and refined around the three largest gaps.
inline double hausdorff_distance(const HConvexPolytope& k, const HConvexPolytope& l, const SphereQuadrature& quad) {
  if (k.dim() != l.dim() || quad.n != k.dim()) throw SpecError("dimension mismatch in hausdorff_distance");
  if (k.degenerate() || l.degenerate()) throw DegenerateBody("hausdorff distance of the point body");
  auto gap = [&](const Direction& e) {
    return std::abs(detail::support_from_sample(k.spec(), k.boundary(), e.vec()) -
                    detail::support_from_sample(l.spec(), l.boundary(), e.vec()));
  };
  Eigen::RowVectorXd gaps(static_cast<Eigen::Index>(quad.size()));
  for (std::size_t i = 0; i < quad.size(); ++i) gaps[static_cast<Eigen::Index>(i)] = gap(quad.nodes[i]);
  const double spacing =
      2.0 * std::pow(sphere_area(quad.n) / (static_cast<double>(quad.size()) * unit_ball_volume(quad.n)), 1.0 / quad.n);
  double best = gaps.maxCoeff();
  for (Eigen::Index i : detail::BoundarySample::top_indices(gaps, 3))
    best = std::max(best, detail::sphere_local_max(gap, quad.nodes[static_cast<std::size_t>(i)], 1.5 * spacing, 1e-9).second);
  return best;
}

/// Wulff spec {(e_g, u(P, e_g) + eps)}: an outer polytopal approximation of the
/// parallel body P^eps, exact in support value at every grid direction.
inline PolytopeSpec outer_parallel_support(const HConvexPolytope& p, double eps, const std::vector<Direction>& grid) {
  if (!(eps > 0.0)) throw SpecError("parallel distance must be positive");
  if (p.degenerate()) throw DegenerateBody("parallel body of the point body");
  PolytopeSpec out;
  out.n = p.dim();
  out.horoballs.reserve(grid.size());
  for (const auto& e : grid) out.horoballs.push_back({e, support(p, e) + eps});
  return out;
}

/// Closed-horoball membership with slack: f_e(X) <= s + slack for every
/// defining horoball.
inline bool polytope_contains(const PolytopeSpec& spec, const HyperboloidPoint& x, double slack = 0.0) {
  return std::all_of(spec.horoballs.begin(), spec.horoballs.end(),
                     [&](const Horoball& hb) { return busemann_value(hb.center, x) <= hb.s + slack; });
}

/// A horoball containing P whose horosphere passes through the point of P
/// nearest to Q, so that Q lies strictly outside. Throws PointInside when Q
/// belongs to P.
inline Horoball separate(const HConvexPolytope& p, const HyperboloidPoint& q) {
  if (p.degenerate()) throw DegenerateBody("cannot separate from the point body");
  if (q.space_dim() != p.dim() + 1) throw SpecError("point dimension does not match the polytope");
  if (polytope_contains(p.spec(), q)) throw PointInside("query point lies in the polytope");
  const auto& bs = p.boundary();
  const auto& spec = p.spec();

  // Minimize cosh d(Q, X(theta)) = -<Q, X(theta)> over boundary points.
  const Eigen::Index k = bs.points.rows() - 1;
  const Eigen::RowVectorXd neg_cosh =
      -(q.time() * bs.points.row(k) - q.spatial().transpose() * bs.points.topRows(k));
  auto objective = [&](const Direction& th) {
    const double r = radial_hit(spec, th.vec()).rho;
    return -(q.time() * std::cosh(r) - std::sinh(r) * q.spatial().dot(th.vec()));
  };
  Direction best_dir = bs.quad.nodes.front();
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i : detail::BoundarySample::top_indices(neg_cosh, 3)) {
    auto [dir, val] = detail::sphere_local_max(objective, bs.quad.nodes[static_cast<std::size_t>(i)], 1.5 * bs.spacing);
    if (val > best) {
      best = val;
      best_dir = dir;
    }
  }
  const HyperboloidPoint nearest = polar_point(radial_hit(spec, best_dir.vec()).rho, best_dir);
  const Isometry to_q = boost_to_origin(q);
  const HyperboloidPoint moved = to_q(nearest);
  const double dist = geodesic_distance(HyperboloidPoint::origin(p.dim()), moved);
  const Horoball local{Direction::normalized(moved.spatial()), -dist};
  const Horoball found = horoball_transform(local, to_q.inverse());
  // On the relative interior of a facet the answer is that facet's own
  // horoball; the search above only pins its direction to ~1e-7 there.
  const std::size_t j = radial_hit(spec, best_dir.vec()).active;
  const Horoball facet{spec.horoballs[j].center, p.canonical_support()[j]};
  if ((found.center.vec() - facet.center.vec()).norm() <= 1e-4 && !horoball_contains(facet, q, false)) return facet;
  return found;
}

}  // namespace horomink
