#pragma once

// Horoballs B_e(s) = {X : f_e(X) < s} with f_e(X) = log(-<X, (e,1)>).
// The horosphere H_e(s) = {f_e = s} sits at signed distance s from the
// origin; O is inside B_e(s) iff s > 0.

#include <cmath>
#include <limits>

#include "horomink/geometry.hpp"

namespace horomink {

struct Horoball {
  Direction center;
  double s;
};

/// f_e(X) = log(-<X, (e,1)>). The argument is always positive.
inline double busemann_value(const Direction& e, const HyperboloidPoint& x) {
  return std::log(x.time() - x.spatial().dot(e.vec()));
}

inline bool horoball_contains(const Horoball& b, const HyperboloidPoint& x, bool strict = true) {
  const double f = busemann_value(b.center, x);
  return strict ? f < b.s : f <= b.s;
}

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Cosines this close to 1 are treated as pointing at the horoball center.
inline constexpr double kRadialSingularGap = 1e-9;

/// Distance from O to H_e(s) along theta, given c = theta . e. Takes the
/// larger root t = e^lambda of (1-c) t^2 - 2 e^s t + (1+c) = 0.
/// Returns kUnbounded when c is within 1e-9 of 1.
inline double horoball_radial_from_cosine(double s, double c) {
  if (c >= 1.0 - kRadialSingularGap) return kUnbounded;
  const double es = std::exp(s);
  const double disc = std::max(0.0, es * es - 1.0 + c * c);
  return std::log((es + std::sqrt(disc)) / (1.0 - c));
}

/// Radial extent of B_e(s) from the origin in direction theta, or kUnbounded.
/// Throws SpecError if s <= 0 (origin not interior).
inline double horoball_radial(const Horoball& b, const Direction& theta) {
  if (!(b.s > 0.0)) throw SpecError("horoball_radial requires s > 0");
  return horoball_radial_from_cosine(b.s, theta.dot(b.center));
}

/// Image of B_e(s) under an isometry: the null vector e^{-s}(e,1) is mapped
/// linearly and renormalized to the form lambda'(e',1), s' = -log lambda'.
inline Horoball horoball_transform(const Horoball& b, const Isometry& iso) {
  const Eigen::Index k = b.center.vec().size();
  Vec v(k + 1);
  v.head(k) = b.center.vec();
  v[k] = 1.0;
  v *= std::exp(-b.s);
  const Vec w = iso.apply(v);
  const double lam = w[k];
  return Horoball{Direction::normalized(w.head(k) / lam), -std::log(lam)};
}

/// Euclidean description of a horoball in the upper half-space chart.
struct HalfSpaceHoroballForm {
  enum class Kind { Plane, Ball };
  Kind kind;
  double height = 0.0;  // Plane: {y_{n+1} > height}
  Vec contact;          // Ball: tangent to the boundary at (contact, 0)
  double radius = 0.0;

  /// Open membership of the half-space point (y, h).
  bool contains(const Vec& y, double h) const {
    if (kind == Kind::Plane) return h > height;
    const double dh = h - radius;
    return (y - contact).squaredNorm() + dh * dh < radius * radius;
  }
};

/// Plane at height e^{-s} when the center is e*, otherwise the Euclidean ball
/// tangent at the contact point p with radius e^s (1 + |p|^2) / 2.
inline HalfSpaceHoroballForm halfspace_form(const Horoball& b) {
  const int n = b.center.sphere_dim();
  const double en = b.center[n];
  // Directions this close to e* are at infinity in double precision.
  if (en >= 1.0 - 1e-15) {
    return HalfSpaceHoroballForm{HalfSpaceHoroballForm::Kind::Plane, std::exp(-b.s), Vec::Zero(n), 0.0};
  }
  Vec p = boundary_to_half_space(b.center);
  const double radius = 0.5 * std::exp(b.s) * (1.0 + p.squaredNorm());
  return HalfSpaceHoroballForm{HalfSpaceHoroballForm::Kind::Ball, 0.0, std::move(p), radius};
}

}  // namespace horomink
