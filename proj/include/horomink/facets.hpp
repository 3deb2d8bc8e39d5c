#pragma once

// Facet areas S(P, e_i), computed in the upper half-space chart where the
// facet is a Euclidean region on the plane y_{n+1} = e^{-x_i}, and checked
// against the derivative of the volume.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "horomink/horoball.hpp"
#include "horomink/measure.hpp"
#include "horomink/polytope.hpp"
#include "horomink/random.hpp"

namespace horomink {

enum class FacetMethod { Auto, Exact, MonteCarlo };

struct FacetOptions {
  /// Auto: exact for n <= 2, Monte-Carlo above.
  FacetMethod method = FacetMethod::Auto;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

/// Horizontal shadow of facet i: the facet is {y : |y - c_j| <= r_j for all j}
/// at height `height`, after e_i has been moved to infinity.
struct FacetShadow {
  double height = 0.0;
  std::vector<Vec> centers;
  std::vector<double> radii;
  bool empty = false;
};

inline FacetShadow facet_shadow(const PolytopeSpec& spec, std::size_t i) {
  if (i >= spec.size()) throw SpecError("facet index out of range");
  const int n = spec.n;
  const Direction up = Direction::reference(n);
  const Mat q = reflection_onto(spec.horoballs[i].center, up);
  FacetShadow sh;
  sh.height = std::exp(-spec.horoballs[i].s);
  const double h = sh.height;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (j == i) continue;
    const Horoball moved{Direction::normalized(q * spec.horoballs[j].center.vec()), spec.horoballs[j].s};
    const HalfSpaceHoroballForm form = halfspace_form(moved);
    if (form.kind == HalfSpaceHoroballForm::Kind::Plane) {
      // Same direction as e_i; excluded by validation.
      throw SpecError("duplicate facet direction");
    }
    const double sq = h * (2.0 * form.radius - h);
    if (sq <= 0.0) {
      sh.empty = true;
      return sh;
    }
    sh.centers.push_back(form.contact);
    sh.radii.push_back(std::sqrt(sq));
  }
  return sh;
}

namespace detail {

/// Length of the intersection of the intervals [c_j - r_j, c_j + r_j].
inline double interval_intersection(const FacetShadow& sh) {
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < sh.centers.size(); ++j) {
    lo = std::max(lo, sh.centers[j][0] - sh.radii[j]);
    hi = std::min(hi, sh.centers[j][0] + sh.radii[j]);
  }
  return std::max(0.0, hi - lo);
}

using Arc = std::pair<double, double>;

inline std::vector<Arc> intersect_arcs(const std::vector<Arc>& set, double start, double len) {
  const double two_pi = 2.0 * std::numbers::pi;
  start = std::fmod(start, two_pi);
  if (start < 0.0) start += two_pi;
  std::vector<Arc> pieces;
  if (start + len <= two_pi) {
    pieces.push_back({start, start + len});
  } else {
    pieces.push_back({start, two_pi});
    pieces.push_back({0.0, start + len - two_pi});
  }
  std::vector<Arc> out;
  for (const auto& [a, b] : set)
    for (const auto& [c, d] : pieces) {
      const double lo = std::max(a, c), hi = std::min(b, d);
      if (hi > lo) out.push_back({lo, hi});
    }
  return out;
}

/// Exact area of an intersection of planar disks by Green's theorem over the
/// boundary arcs. Coincident circles contribute once (lowest index).
inline double disk_intersection_area(const FacetShadow& sh) {
  const std::size_t count = sh.centers.size();
  const double two_pi = 2.0 * std::numbers::pi;
  double twice_area = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const Vec& cj = sh.centers[j];
    const double rj = sh.radii[j];
    std::vector<Arc> allowed{{0.0, two_pi}};
    for (std::size_t k = 0; k < count && !allowed.empty(); ++k) {
      if (k == j) continue;
      const Vec diff = sh.centers[k] - cj;
      const double d = diff.norm();
      const double rk = sh.radii[k];
      const double eps = 1e-14 * std::max({1.0, rj, rk});
      if (d < eps && std::abs(rj - rk) < eps) {
        if (k < j) allowed.clear();
        continue;
      }
      if (d + rj <= rk) continue;  // circle j inside disk k
      if (d >= rj + rk) return 0.0;  // disjoint disks
      if (d + rk <= rj) {            // disk k strictly inside disk j
        allowed.clear();
        continue;
      }
      const double cosb = std::clamp((d * d + rj * rj - rk * rk) / (2.0 * d * rj), -1.0, 1.0);
      const double beta = std::acos(cosb);
      const double alpha = std::atan2(diff[1], diff[0]);
      allowed = intersect_arcs(allowed, alpha - beta, 2.0 * beta);
    }
    for (const auto& [a, b] : allowed) {
      twice_area += rj * rj * (b - a) + rj * cj[0] * (std::sin(b) - std::sin(a)) -
                    rj * cj[1] * (std::cos(b) - std::cos(a));
    }
  }
  return std::max(0.0, 0.5 * twice_area);
}

/// Monte-Carlo n-volume of the disk intersection, sampling the bounding box
/// of the smallest disk.
inline double disk_intersection_volume_mc(const FacetShadow& sh, std::size_t samples, std::uint64_t seed) {
  const std::size_t smallest = static_cast<std::size_t>(
      std::min_element(sh.radii.begin(), sh.radii.end()) - sh.radii.begin());
  const Vec& c0 = sh.centers[smallest];
  const double r0 = sh.radii[smallest];
  const Eigen::Index n = c0.size();
  CounterRng rng(seed);
  std::size_t hits = 0;
  Vec y(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index d = 0; d < n; ++d) y[d] = c0[d] + r0 * (2.0 * rng.uniform() - 1.0);
    bool inside = true;
    for (std::size_t j = 0; j < sh.centers.size() && inside; ++j)
      inside = (y - sh.centers[j]).squaredNorm() <= sh.radii[j] * sh.radii[j];
    hits += inside ? 1 : 0;
  }
  return std::pow(2.0 * r0, static_cast<double>(n)) * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace detail

/// S(P, e_i) for the body given by `spec`, without requiring the facet to be
/// flagged nonempty (an empty shadow yields 0).
inline double facet_area_of(const PolytopeSpec& spec, std::size_t i, const FacetOptions& opt = {}) {
  spec.validate();
  if (spec.has_zero()) throw DegenerateBody("facet area of the point body");
  const FacetShadow sh = facet_shadow(spec, i);
  if (sh.empty) return 0.0;
  const int n = spec.n;
  FacetMethod method = opt.method;
  if (method == FacetMethod::Auto) method = n <= 2 ? FacetMethod::Exact : FacetMethod::MonteCarlo;
  if (method == FacetMethod::Exact && n > 2) throw SpecError("exact facet areas are only available for n <= 2");
  double euclid = 0.0;
  if (method == FacetMethod::Exact) {
    euclid = n == 1 ? detail::interval_intersection(sh) : detail::disk_intersection_area(sh);
  } else {
    euclid = detail::disk_intersection_volume_mc(sh, opt.samples, opt.seed);
  }
  return euclid / std::pow(sh.height, n);
}

/// S(P, e_i); zero for horoballs that do not support the body.
inline double facet_area(const HConvexPolytope& p, std::size_t i, const FacetOptions& opt = {}) {
  if (p.degenerate()) throw DegenerateBody("facet area of the point body");
  if (i >= p.size()) throw SpecError("facet index out of range");
  if (!p.facet_nonempty()[i]) return 0.0;
  return facet_area_of(p.spec(), i, opt);
}

/// All facet areas of the body given by `spec`.
inline std::vector<double> facet_areas_of(const PolytopeSpec& spec, const FacetOptions& opt = {}) {
  std::vector<double> out(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) out[i] = facet_area_of(spec, i, opt);
  return out;
}

/// Central difference (V(x + delta e_i) - V(x - delta e_i)) / (2 delta).
inline double facet_area_fd(const PolytopeSpec& spec, std::size_t i, const SphereQuadrature& quad,
                            double delta = 1e-4) {
  if (!(delta > 0.0)) throw SpecError("finite-difference step must be positive");
  if (i >= spec.size()) throw SpecError("facet index out of range");
  if (spec.horoballs[i].s - delta <= 0.0) throw SpecError("finite-difference step leaves the valid range");
  PolytopeSpec plus = spec, minus = spec;
  plus.even = minus.even = false;
  plus.horoballs[i].s += delta;
  minus.horoballs[i].s -= delta;
  return (volume_of(plus, quad) - volume_of(minus, quad)) / (2.0 * delta);
}

inline double facet_area_fd(const HConvexPolytope& p, std::size_t i, const SphereQuadrature& quad,
                            double delta = 1e-4) {
  if (p.degenerate()) throw DegenerateBody("facet area of the point body");
  return facet_area_fd(p.spec(), i, quad, delta);
}

/// S_p(P, .) = sum_i e^{-p u(P, e_i)} S(P, e_i) delta_{e_i}, over facets of
/// positive area.
inline DiscreteMeasure surface_measure_p(const HConvexPolytope& p, double power, const FacetOptions& opt = {}) {
  DiscreteMeasure mu;
  mu.n = p.dim();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double area = facet_area(p, i, opt);
    if (area > 0.0)
      mu.atoms.push_back({p.spec().horoballs[i].center, std::exp(-power * p.canonical_support()[i]) * area});
  }
  mu.even = p.spec().even && mu.is_even_layout();
  return mu;
}

}  // namespace horomink
