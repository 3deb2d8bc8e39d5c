#pragma once

// H-convex polytopes P = intersection of closed horoballs B_{e_i}(x_i),
// together with their radial and support functions, extremal radii and
// volume.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "horomink/detail/search.hpp"
#include "horomink/geometry.hpp"
#include "horomink/horoball.hpp"
#include "horomink/parallel.hpp"
#include "horomink/quadrature.hpp"

namespace horomink {

inline constexpr double kFacetTol = 1e-7;
inline constexpr double kPairTol = 1e-9;

/// Defining data of a horospherical Wulff shape. For even specs the list has
/// 2m entries and entry m+i is the antipode of entry i with the same value.
struct PolytopeSpec {
  int n = 1;
  std::vector<Horoball> horoballs;
  bool even = false;
  /// Accept zero parameters: the body is then the single point O.
  bool allow_point = false;

  std::size_t size() const { return horoballs.size(); }

  /// Even spec from half directions e_1..e_m and values z_1..z_m.
  static PolytopeSpec even_from_half(const std::vector<Direction>& half, const std::vector<double>& z) {
    if (half.size() != z.size()) throw SpecError("direction and value counts differ");
    if (half.empty()) throw SpecError("even spec needs at least one direction pair");
    PolytopeSpec spec;
    spec.n = half.front().sphere_dim();
    spec.even = true;
    for (std::size_t i = 0; i < half.size(); ++i) spec.horoballs.push_back({half[i], z[i]});
    for (std::size_t i = 0; i < half.size(); ++i) spec.horoballs.push_back({-half[i], z[i]});
    return spec;
  }

  /// Throws SpecError on malformed data, DegenerateBody when the origin is not
  /// interior (a zero parameter) unless allow_point is set.
  void validate() const {
    if (n < 1) throw SpecError("dimension n must be positive");
    if (horoballs.size() < 2) throw SpecError("a polytope needs at least two horoballs");
    for (std::size_t i = 0; i < horoballs.size(); ++i) {
      const auto& hb = horoballs[i];
      if (hb.center.sphere_dim() != n)
        throw SpecError("horoball " + std::to_string(i) + " has the wrong dimension");
      if (!std::isfinite(hb.s) || hb.s < 0.0)
        throw SpecError("horoball " + std::to_string(i) + " has a negative or non-finite parameter");
      for (std::size_t j = 0; j < i; ++j)
        if ((horoballs[j].center.vec() - hb.center.vec()).norm() < kPairTol)
          throw SpecError("horoballs " + std::to_string(j) + " and " + std::to_string(i) +
                          " share a direction");
    }
    if (even) {
      if (horoballs.size() % 2 != 0) throw SpecError("even spec needs an even number of horoballs");
      const std::size_t m = horoballs.size() / 2;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& a = horoballs[i];
        const auto& b = horoballs[m + i];
        if ((a.center.vec() + b.center.vec()).norm() > kPairTol || a.s != b.s)
          throw SpecError("even spec entries " + std::to_string(i) + " and " + std::to_string(m + i) +
                          " are not antipodal pairs with equal values");
      }
    }
    if (!allow_point && has_zero()) throw DegenerateBody("a zero parameter puts the origin on the boundary");
  }

  bool has_zero() const {
    return std::any_of(horoballs.begin(), horoballs.end(), [](const Horoball& h) { return h.s == 0.0; });
  }

  std::vector<double> values() const {
    std::vector<double> x;
    x.reserve(horoballs.size());
    for (const auto& h : horoballs) x.push_back(h.s);
    return x;
  }

  PolytopeSpec with_values(const std::vector<double>& x) const {
    if (x.size() != horoballs.size()) throw SpecError("value count mismatch");
    PolytopeSpec out = *this;
    for (std::size_t i = 0; i < x.size(); ++i) out.horoballs[i].s = x[i];
    return out;
  }
};

/// Radial value and the index of the horoball whose horosphere is hit.
struct RadialHit {
  double rho;
  std::size_t active;
};

/// rho(P, theta) = min_j rho_j(theta). Finite for >= 2 distinct directions.
inline RadialHit radial_hit(const PolytopeSpec& spec, const Vec& theta) {
  RadialHit best{kUnbounded, 0};
  for (std::size_t j = 0; j < spec.horoballs.size(); ++j) {
    const auto& hb = spec.horoballs[j];
    const double r = horoball_radial_from_cosine(hb.s, theta.dot(hb.center.vec()));
    if (r < best.rho) best = {r, j};
  }
  return best;
}

namespace detail {

/// Boundary points polar_point(rho(theta_k), theta_k) over a node set, stored
/// column-wise in Minkowski coordinates.
struct BoundarySample {
  SphereQuadrature quad;
  Mat points;                 // (n+2) x N
  std::vector<double> rho;    // radial values per node
  double spacing = 0.0;       // typical angular gap between neighbouring nodes

  BoundarySample(const PolytopeSpec& spec, SphereQuadrature q) : quad(std::move(q)) {
    const std::size_t count = quad.size();
    const int n = quad.n;
    points.resize(n + 2, static_cast<Eigen::Index>(count));
    rho.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      const Vec& th = quad.nodes[k].vec();
      const double r = radial_hit(spec, th).rho;
      rho[k] = r;
      points.col(static_cast<Eigen::Index>(k)).head(n + 1) = std::sinh(r) * th;
      points(n + 1, static_cast<Eigen::Index>(k)) = std::cosh(r);
    }
    // Gap between neighbouring nodes: the diameter of a cap of area |S^n| / N,
    // which is exactly the grid step for n = 1.
    spacing = 2.0 * std::pow(sphere_area(n) / (static_cast<double>(count) * unit_ball_volume(n)), 1.0 / n);
  }

  /// exp(f_e) at each sample: t_k - x_k . e.
  Eigen::RowVectorXd exp_busemann(const Vec& e) const {
    const Eigen::Index k = points.rows() - 1;
    return points.row(k) - e.transpose() * points.topRows(k);
  }

  /// Indices of the `count` largest entries of v, largest first.
  static std::vector<Eigen::Index> top_indices(const Eigen::RowVectorXd& v, std::size_t count) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    count = std::min(count, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      [&](Eigen::Index a, Eigen::Index b) { return v[a] > v[b] || (v[a] == v[b] && a < b); });
    idx.resize(count);
    return idx;
  }
};

}  // namespace detail

/// An h-convex polytope with its canonical support values u(P, e_i).
class HConvexPolytope {
 public:
  HConvexPolytope(PolytopeSpec spec, std::vector<double> canonical, std::vector<bool> nonempty,
                  std::shared_ptr<const detail::BoundarySample> boundary)
      : spec_(std::move(spec)),
        canonical_(std::move(canonical)),
        nonempty_(std::move(nonempty)),
        boundary_(std::move(boundary)) {}

  const PolytopeSpec& spec() const { return spec_; }
  int dim() const { return spec_.n; }
  std::size_t size() const { return spec_.size(); }
  const std::vector<double>& canonical_support() const { return canonical_; }
  const std::vector<bool>& facet_nonempty() const { return nonempty_; }
  /// True for the single-point body O.
  bool degenerate() const { return boundary_ == nullptr; }

  const detail::BoundarySample& boundary() const {
    if (!boundary_) throw DegenerateBody("the body is the single point O");
    return *boundary_;
  }

 private:
  PolytopeSpec spec_;
  std::vector<double> canonical_;
  std::vector<bool> nonempty_;
  std::shared_ptr<const detail::BoundarySample> boundary_;
};

namespace detail {

/// u(P, e) from boundary samples: grid scan of exp f_e, then local
/// refinement around the best few nodes.
inline double support_from_sample(const PolytopeSpec& spec, const BoundarySample& bs, const Vec& e) {
  const Eigen::RowVectorXd vals = bs.exp_busemann(e);
  const auto top = BoundarySample::top_indices(vals, spec.n == 1 ? 2 : 3);
  double best = vals[top.front()];
  auto objective = [&](const Direction& th) {
    const double r = radial_hit(spec, th.vec()).rho;
    return std::cosh(r) - std::sinh(r) * th.vec().dot(e);
  };
  for (Eigen::Index k : top) {
    const auto [arg, val] = sphere_local_max(objective, bs.quad.nodes[static_cast<std::size_t>(k)],
                                             1.5 * bs.spacing);
    best = std::max(best, val);
  }
  return std::log(best);
}

}  // namespace detail

/// Builds the polytope, its boundary sample over `quad`, canonical supports
/// and the facet flags (support within 1e-7 of x_i).
inline HConvexPolytope build_polytope(const PolytopeSpec& spec, SphereQuadrature quad) {
  spec.validate();
  if (quad.n != spec.n) throw SpecError("quadrature dimension does not match the polytope");
  if (spec.has_zero()) {
    if (spec.even || spec.allow_point)
      return HConvexPolytope(spec, std::vector<double>(spec.size(), 0.0), std::vector<bool>(spec.size(), false),
                             nullptr);
  }
  auto bs = std::make_shared<const detail::BoundarySample>(spec, std::move(quad));
  std::vector<double> canonical(spec.size());
  std::vector<bool> nonempty(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double u = detail::support_from_sample(spec, *bs, spec.horoballs[i].center.vec());
    // u(P, e_i) <= x_i always holds; clamp the refinement's last-ulp overshoot.
    canonical[i] = std::min(u, spec.horoballs[i].s);
    nonempty[i] = canonical[i] >= spec.horoballs[i].s - kFacetTol;
  }
  return HConvexPolytope(spec, std::move(canonical), std::move(nonempty), std::move(bs));
}

inline HConvexPolytope build_polytope(const PolytopeSpec& spec) {
  return build_polytope(spec, default_quadrature(spec.n));
}

/// rho(P, theta): distance from O to the boundary along theta.
inline double radial(const HConvexPolytope& p, const Direction& theta) {
  if (p.degenerate()) throw DegenerateBody("radial function of the point body");
  return radial_hit(p.spec(), theta.vec()).rho;
}

/// u(P, e) = sup over the body of f_e.
inline double support(const HConvexPolytope& p, const Direction& e) {
  if (p.degenerate()) throw DegenerateBody("support function of the point body");
  return detail::support_from_sample(p.spec(), p.boundary(), e.vec());
}

struct ExtremalRadii {
  double outer;  // R(P) = max radial
  double inner;  // r(P) = min radial
};

/// Max and min of the radial function: grid scan plus local refinement.
inline ExtremalRadii extremal_radii(const HConvexPolytope& p) {
  const auto& bs = p.boundary();
  const auto& spec = p.spec();
  Eigen::RowVectorXd rho = Eigen::Map<const Eigen::RowVectorXd>(bs.rho.data(), static_cast<Eigen::Index>(bs.rho.size()));
  auto rad = [&](const Direction& th) { return radial_hit(spec, th.vec()).rho; };
  auto neg_rad = [&](const Direction& th) { return -radial_hit(spec, th.vec()).rho; };
  double outer = rho.maxCoeff(), inner = rho.minCoeff();
  for (Eigen::Index k : detail::BoundarySample::top_indices(rho, 3))
    outer = std::max(outer, detail::sphere_local_max(rad, bs.quad.nodes[static_cast<std::size_t>(k)], 1.5 * bs.spacing).second);
  for (Eigen::Index k : detail::BoundarySample::top_indices(-rho, 3))
    inner = std::min(inner, -detail::sphere_local_max(neg_rad, bs.quad.nodes[static_cast<std::size_t>(k)], 1.5 * bs.spacing).second);
  return {outer, inner};
}

namespace detail {

/// Integral of I_1(rho(phi)) over [a, b] on the circle, splitting at the
/// angles where the active horoball changes.
inline double circle_arc_volume(const PolytopeSpec& spec, double a, double b, std::size_t ia, std::size_t ib,
                                int depth) {
  static const auto rule = gauss_legendre(3);
  auto dir = [](double phi) {
    Vec v(2);
    v << std::cos(phi), std::sin(phi);
    return v;
  };
  auto rho_of = [&](std::size_t j, double phi) {
    const auto& hb = spec.horoballs[j];
    return horoball_radial_from_cosine(hb.s, dir(phi).dot(hb.center.vec()));
  };
  if (ia == ib || depth > 40) {
    double acc = 0.0;
    bool uniform = true;
    for (std::size_t g = 0; g < rule.first.size(); ++g) {
      const double phi = 0.5 * (a + b) + 0.5 * (b - a) * rule.first[g];
      const RadialHit hit = radial_hit(spec, dir(phi));
      if (hit.active != ia && rho_of(ia, phi) > hit.rho) uniform = false;
      acc += rule.second[g] * sinh_power_integral(1, hit.rho);
    }
    if (uniform || depth > 40) return 0.5 * (b - a) * acc;
    // A facet lies strictly inside this interval.
    const double mid = 0.5 * (a + b);
    const std::size_t im = radial_hit(spec, dir(mid)).active;
    return circle_arc_volume(spec, a, mid, ia, im, depth + 1) + circle_arc_volume(spec, mid, b, im, ib, depth + 1);
  }
  // rho_ia - rho_ib changes sign on [a, b]: locate the switch by bisection.
  double lo = a, hi = b;
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rho_of(ia, mid) <= rho_of(ib, mid)) lo = mid;
    else hi = mid;
  }
  const double cut = 0.5 * (lo + hi);
  const RadialHit at = radial_hit(spec, dir(cut));
  const double tie = std::min(rho_of(ia, cut), rho_of(ib, cut));
  const bool clean = at.rho >= tie * (1.0 - 1e-13) - 1e-15;
  const std::size_t left = clean ? ia : at.active;
  const std::size_t right = clean ? ib : at.active;
  return circle_arc_volume(spec, a, cut, ia, left, depth + 1) + circle_arc_volume(spec, cut, b, right, ib, depth + 1);
}

}  // namespace detail

/// V(P) = int_{S^n} I_n(rho(theta)) dtheta.
///
/// On a uniform circle grid (n = 1) each grid cell is integrated with a
/// 3-point Gauss rule after splitting at the angles where the active
/// horoball changes, which keeps V smooth in the parameters. Other node sets
/// use the plain weighted sum.
inline double volume_of(const PolytopeSpec& spec, const SphereQuadrature& quad) {
  spec.validate();
  if (spec.has_zero()) return 0.0;
  if (quad.n != spec.n) throw SpecError("quadrature dimension does not match the polytope");
  if (quad.kind == QuadratureKind::UniformGrid) {
    const std::size_t count = quad.size();
    const double step = quad.grid_step();
    std::vector<std::size_t> edge_active(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
      const double phi = step * (static_cast<double>(k) - 0.5);
      Vec v(2);
      v << std::cos(phi), std::sin(phi);
      edge_active[k] = radial_hit(spec, v).active;
    }
    return deterministic_sum(count, [&](std::size_t k) {
      const double a = step * (static_cast<double>(k) - 0.5);
      return detail::circle_arc_volume(spec, a, a + step, edge_active[k], edge_active[k + 1], 0);
    });
  }
  return deterministic_sum(quad.size(), [&](std::size_t k) {
    return quad.weights[k] * sinh_power_integral(spec.n, radial_hit(spec, quad.nodes[k].vec()).rho);
  });
}

inline double volume(const HConvexPolytope& p, const SphereQuadrature& quad) {
  if (p.degenerate()) return 0.0;
  return volume_of(p.spec(), quad);
}

/// Replaces each x_i by u(P, e_i); the body is unchanged and every horoball
/// becomes supporting.
inline PolytopeSpec canonicalize(const PolytopeSpec& spec, const SphereQuadrature& quad) {
  const HConvexPolytope p = build_polytope(spec, quad);
  if (p.degenerate()) throw DegenerateBody("cannot canonicalize the point body");
  PolytopeSpec out = spec.with_values(p.canonical_support());
  if (out.even) {
    // Keep the pairs bit-identical; both halves agree up to rounding.
    const std::size_t m = out.size() / 2;
    for (std::size_t i = 0; i < m; ++i) {
      const double v = std::min(out.horoballs[i].s, out.horoballs[m + i].s);
      out.horoballs[i].s = out.horoballs[m + i].s = v;
    }
  }
  return out;
}

inline PolytopeSpec canonicalize(const PolytopeSpec& spec) {
  return canonicalize(spec, default_quadrature(spec.n));
}

}  // namespace horomink
