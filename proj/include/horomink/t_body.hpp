#pragma once

// Volume of T(r), the h-convex hull of two points at distance r, and the
// a-priori support bound it yields for bodies of bounded volume.

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "horomink/errors.hpp"
#include "horomink/quadrature.hpp"

namespace horomink {

/// V(T(r)) = omega_n int_1^{e^r} S(r,y)^n / y^{n+1} dy with
/// S(r,y) = sqrt((e^r + 1) y - y^2) - e^{r/2}.
inline double t_body_volume(double r, int n) {
  if (!(r > 0.0)) throw SpecError("t_body_volume requires r > 0");
  if (n < 1) throw SpecError("dimension n must be positive");
  // Substitute y = 1 + (e^r - 1) tau and write S without cancellation:
  // S = (y - 1)(e^r - y) / (sqrt((e^r + 1) y - y^2) + e^{r/2}).
  const double er = std::exp(r), half = std::exp(0.5 * r), span = std::expm1(r);
  auto integrand = [&](double tau) {
    const double y = 1.0 + span * tau;
    const double num = span * tau * span * (1.0 - tau);
    const double s = num / (std::sqrt(std::max(0.0, (er + 1.0) * y - y * y)) + half);
    return std::pow(s, n) / std::pow(y, n + 1);
  };
  const double integral =
      span * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 15, 1e-10);
  return unit_ball_volume(n) * integral;
}

/// Closed-form lower bound for V(T(r)) obtained from the concavity of S(r, .)
/// on [1, (e^r+1)/2]:
/// omega_n k^n [log m + sum_{j<n} (-1)^{n-j} C(n,j)/(n-j) (1 - m^{j-n})],
/// k = (e^{r/2}-1)/(e^{r/2}+1), m = (e^r+1)/2.
inline double t_body_volume_lower_bound(double r, int n) {
  const double half = std::exp(0.5 * r);
  const double kappa = (half - 1.0) / (half + 1.0);
  const double mid = 0.5 * (std::exp(r) + 1.0);
  double bracket = std::log(mid);
  double binom = 1.0;  // C(n, j)
  for (int j = 0; j < n; ++j) {
    const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
    bracket += sign * binom / (n - j) * (1.0 - std::pow(mid, j - n));
    binom = binom * (n - j) / (j + 1);
  }
  return unit_ball_volume(n) * std::pow(kappa, n) * bracket;
}

/// Smallest r with V(T(r)) > volume_cap, by bisection. Every body containing O
/// with volume <= volume_cap has support function <= this bound.
inline double boundedness_bound(double volume_cap, int n) {
  if (!(volume_cap > 0.0)) throw SpecError("volume cap must be positive");
  double lo = 0.0, hi = 1.0;
  while (t_body_volume(hi, n) <= volume_cap) {
    lo = hi;
    hi *= 2.0;
    if (hi > 700.0) throw SpecError("volume cap too large");
  }
  while (hi - lo > 1e-9 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (t_body_volume(mid, n) > volume_cap) hi = mid;
    else lo = mid;
  }
  return hi;
}

}  // namespace horomink
