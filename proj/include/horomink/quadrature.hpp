#pragma once

// Node sets on S^n and the radial integrals int_0^rho sinh^n r dr.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "horomink/geometry.hpp"
#include "horomink/random.hpp"

namespace horomink {

/// |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
inline double sphere_area(int n) {
  const double h = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

/// Volume of the Euclidean unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Gauss-Legendre nodes and weights on [-1, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count) {
  std::vector<double> x(count), w(count);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = count * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[count - 1 - i] = z;
    w[i] = w[count - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

enum class QuadratureKind { UniformGrid, ProductRule, MonteCarlo };

struct SphereQuadrature {
  int n = 1;
  std::vector<Direction> nodes;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::UniformGrid;
  std::uint64_t seed = 0;

  std::size_t size() const { return nodes.size(); }
  /// Angular spacing of a uniform grid (n = 1 only).
  double grid_step() const { return 2.0 * std::numbers::pi / static_cast<double>(nodes.size()); }
};

/// Builds a deterministic node set.
///   UniformGrid (n = 1): nodes at angles 2 pi k / N, weights 2 pi / N.
///   ProductRule (n = 2): Gauss-Legendre in cos(polar angle) times a uniform
///     azimuth grid; N = n_z * n_phi with n_z the largest divisor <= sqrt(N).
///   MonteCarlo (any n): normalized Gaussian samples, weights |S^n| / N.
inline SphereQuadrature build_quadrature(int n, std::size_t count, QuadratureKind kind,
                                         std::uint64_t seed = 0) {
  if (n < 1) throw SpecError("quadrature dimension must be positive");
  if (count < 4) throw SpecError("quadrature needs at least 4 nodes");
  SphereQuadrature q;
  q.n = n;
  q.kind = kind;
  q.seed = seed;
  q.nodes.reserve(count);
  q.weights.reserve(count);
  switch (kind) {
    case QuadratureKind::UniformGrid: {
      if (n != 1) throw SpecError("uniform grid quadrature is only available for n = 1");
      const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
      for (std::size_t k = 0; k < count; ++k) {
        q.nodes.push_back(Direction::from_angle(step * static_cast<double>(k)));
        q.weights.push_back(step);
      }
      break;
    }
    case QuadratureKind::ProductRule: {
      if (n != 2) throw SpecError("product rule quadrature is only available for n = 2");
      std::size_t nz = static_cast<std::size_t>(std::sqrt(static_cast<double>(count)));
      while (count % nz != 0) --nz;
      const std::size_t nphi = count / nz;
      if (nz < 2 || nphi < 2) throw SpecError("product rule node count must factor into two parts >= 2");
      const auto [z, w] = gauss_legendre(static_cast<int>(nz));
      const double dphi = 2.0 * std::numbers::pi / static_cast<double>(nphi);
      for (std::size_t i = 0; i < nz; ++i) {
        const double rxy = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
        for (std::size_t j = 0; j < nphi; ++j) {
          const double phi = dphi * (static_cast<double>(j) + 0.5);
          Vec v(3);
          v << rxy * std::cos(phi), rxy * std::sin(phi), z[i];
          q.nodes.push_back(Direction::normalized(v));
          q.weights.push_back(w[i] * dphi);
        }
      }
      break;
    }
    case QuadratureKind::MonteCarlo: {
      CounterRng rng(seed);
      const double w = sphere_area(n) / static_cast<double>(count);
      for (std::size_t k = 0; k < count; ++k) {
        q.nodes.push_back(Direction::normalized(rng.unit_vector(n + 1)));
        q.weights.push_back(w);
      }
      break;
    }
  }
  return q;
}

/// Default node set used by polytope operations: a 4096-node grid for n = 1,
/// a 16384-node product rule for n = 2, and 20000 seeded Monte-Carlo
/// directions otherwise.
inline SphereQuadrature default_quadrature(int n, std::uint64_t seed = 0) {
  if (n == 1) return build_quadrature(1, 4096, QuadratureKind::UniformGrid);
  if (n == 2) return build_quadrature(2, 16384, QuadratureKind::ProductRule);
  return build_quadrature(n, 20000, QuadratureKind::MonteCarlo, seed);
}

/// I_n(rho) = int_0^rho sinh^n r dr.
inline double sinh_power_integral(int n, double rho) {
  if (rho <= 0.0) return 0.0;
  if (rho < 0.5) {
    // The recurrence cancels for small rho; the integrand is smooth there.
    static const auto rule = gauss_legendre(16);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.first.size(); ++i) {
      const double r = 0.5 * rho * (rule.first[i] + 1.0);
      acc += rule.second[i] * std::pow(std::sinh(r), n);
    }
    return 0.5 * rho * acc;
  }
  const double sh = std::sinh(rho), ch = std::cosh(rho);
  double prev = rho;                                      // I_0
  double cur = 2.0 * std::sinh(0.5 * rho) * std::sinh(0.5 * rho);  // I_1
  if (n == 0) return prev;
  double shpow = 1.0;  // sinh^{k-1}
  for (int k = 2; k <= n; ++k) {
    shpow *= sh;
    const double next = (shpow * ch - (k - 1) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace horomink
