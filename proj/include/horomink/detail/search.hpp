#pragma once

// Local maximizers used to refine grid scans on S^n.

#include <algorithm>
#include <cmath>
#include <vector>

#include "horomink/geometry.hpp"

namespace horomink::detail {

/// Golden-section maximization of f on [a, b]. Returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  // The bracket ends can beat the midpoint on a flat or kinked maximum.
  if (fc >= fx && fc >= fd) return {c, fc};
  if (fd >= fx) return {d, fd};
  return {x, fx};
}

/// Orthonormal basis of the tangent space of S^n at theta (n columns).
inline Mat tangent_basis(const Direction& theta) {
  const int n = theta.sphere_dim();
  const Mat q = reflection_onto(Direction::reference(n), theta);
  return q.leftCols(n);
}

/// Point of S^n reached from theta along the chart offset u.
inline Direction chart_point(const Direction& theta, const Mat& basis, const Vec& u) {
  return Direction::normalized(theta.vec() + basis * u);
}

/// Maximizes g over S^n near `start`, searching within roughly `radius`
/// (radians). n = 1 uses golden section along the circle; higher dimensions
/// use a compass search with axis and diagonal moves in the tangent chart.
template <class G>
std::pair<Direction, double> sphere_local_max(G&& g, const Direction& start, double radius,
                                              double tol = 1e-11) {
  const int n = start.sphere_dim();
  const Mat basis = tangent_basis(start);
  if (n == 1) {
    const double w = std::tan(std::min(radius, 1.5));
    auto along = [&](double u) {
      Vec off(1);
      off[0] = u;
      return g(chart_point(start, basis, off));
    };
    const double f0 = g(start);
    auto [u, fu] = golden_max(along, -w, w, tol);
    if (f0 >= fu) return {start, f0};
    Vec off(1);
    off[0] = u;
    return {chart_point(start, basis, off), fu};
  }

  std::vector<Vec> moves;
  for (int k = 0; k < n; ++k) {
    Vec m = Vec::Zero(n);
    m[k] = 1.0;
    moves.push_back(m);
    moves.push_back(-m);
  }
  if (n <= 3) {
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        for (double sk : {-1.0, 1.0})
          for (double sl : {-1.0, 1.0}) {
            Vec m = Vec::Zero(n);
            m[k] = sk / std::sqrt(2.0);
            m[l] = sl / std::sqrt(2.0);
            moves.push_back(m);
          }
  }

  Vec u = Vec::Zero(n);
  double best = g(start);
  double step = std::min(radius, 0.5);
  int evals = 0;
  while (step > tol && evals < 50000) {
    double cand_best = best;
    Vec cand_u = u;
    for (const Vec& m : moves) {
      const Vec trial = u + step * m;
      const double v = g(chart_point(start, basis, trial));
      ++evals;
      if (v > cand_best) {
        cand_best = v;
        cand_u = trial;
      }
    }
    if (cand_best > best) {
      best = cand_best;
      u = cand_u;
    } else {
      step *= 0.5;
    }
  }
  return {chart_point(start, basis, u), best};
}

}  // namespace horomink::detail
