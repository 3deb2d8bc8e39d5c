#pragma once

// Shared fixtures for the test suites.

#include <cmath>
#include <numbers>
#include <vector>

#include "horomink/horoball.hpp"
#include "horomink/measure.hpp"
#include "horomink/polytope.hpp"
#include "horomink/random.hpp"

namespace hm_test {

using namespace horomink;

inline PolytopeSpec lens(int n, double s1, double s2) {
  const Direction e = Direction::reference(n);
  PolytopeSpec spec;
  spec.n = n;
  spec.horoballs = {{e, s1}, {-e, s2}};
  return spec;
}

inline PolytopeSpec lens(int n, double s) { return lens(n, s, s); }

/// m horoballs in the plane at well-separated random angles, values in [lo, hi].
inline PolytopeSpec random_spec_n1(CounterRng& rng, std::size_t m, double lo = 0.2, double hi = 2.0) {
  PolytopeSpec spec;
  spec.n = 1;
  const double offset = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < m; ++i) {
    const double jitter = rng.uniform(-0.3, 0.3) * 2.0 * std::numbers::pi / static_cast<double>(m);
    const double phi = offset + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m) + jitter;
    spec.horoballs.push_back({Direction::from_angle(phi), rng.uniform(lo, hi)});
  }
  return spec;
}

/// Random spec in dimension n with directions drawn uniformly on S^n.
inline PolytopeSpec random_spec(CounterRng& rng, int n, std::size_t m, double lo = 0.2, double hi = 2.0) {
  if (n == 1) return random_spec_n1(rng, m, lo, hi);
  PolytopeSpec spec;
  spec.n = n;
  while (spec.horoballs.size() < m) {
    const Direction e = Direction::normalized(rng.unit_vector(n + 1));
    bool ok = true;
    for (const auto& h : spec.horoballs) ok = ok && (h.center.vec() - e.vec()).norm() > 0.2;
    if (ok) spec.horoballs.push_back({e, rng.uniform(lo, hi)});
  }
  return spec;
}

/// Even measure on S^1 with m pairs at angles in [0, pi), weights in [0.5, 2].
inline DiscreteMeasure random_even_measure_n1(CounterRng& rng, std::size_t m) {
  std::vector<Direction> half;
  std::vector<double> w;
  const double offset = rng.uniform(0.0, std::numbers::pi);
  for (std::size_t i = 0; i < m; ++i) {
    const double jitter = rng.uniform(-0.25, 0.25) * std::numbers::pi / static_cast<double>(m);
    half.push_back(Direction::from_angle(offset + std::numbers::pi * static_cast<double>(i) / static_cast<double>(m) + jitter));
    w.push_back(rng.uniform(0.5, 2.0));
  }
  return DiscreteMeasure::even_from_half(half, w);
}

/// Approximation of T(r), the h-convex hull of the chart points (0, 1) and
/// (0, e^r): horoballs with s = 0 tangent at e^{r/2} theta for `count`
/// directions theta of S^{n-1}, moved so that the midpoint of the two hull
/// points becomes the origin. For n = 1 only count = 2 makes sense.
inline PolytopeSpec t_body_spec(double r, int n, std::size_t count) {
  const Isometry center = boost_to_origin(polar_point(0.5 * r, Direction::reference(n)));
  const double rad = std::exp(0.5 * r);
  PolytopeSpec spec;
  spec.n = n;
  for (std::size_t k = 0; k < count; ++k) {
    Vec p(n);
    if (n == 1) {
      p << (k % 2 ? rad : -rad);
    } else if (n == 2) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      p << rad * std::cos(phi), rad * std::sin(phi);
    } else {
      CounterRng rng(k);
      p = rad * rng.unit_vector(n);
    }
    spec.horoballs.push_back(horoball_transform({boundary_from_half_space(p), 0.0}, center));
  }
  return spec;
}

inline DiscreteMeasure symmetric_four(double a = 1.0) {
  return DiscreteMeasure::even_from_half({Direction::from_angle(0.0), Direction::from_angle(0.5 * std::numbers::pi)},
                                         {a, a});
}

}  // namespace hm_test
