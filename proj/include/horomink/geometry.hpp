#pragma once

// Points and isometries of hyperbolic space H^{n+1}.
//
// The hyperboloid model {X in R^{n+2} : <X,X> = -1, x_{n+2} > 0} with the
// Lorentzian product <X,Y> = x_1 y_1 + ... + x_{n+1} y_{n+1} - x_{n+2} y_{n+2}
// is the canonical representation. The Poincare ball and the upper half-space
// are charts. The half-space chart sends the boundary direction
// e* = (0,...,0,1) to infinity and the origin O to (0,...,0,1).

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "horomink/errors.hpp"

namespace horomink {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kDirectionTol = 1e-12;
inline constexpr double kHyperboloidTol = 1e-10;

/// Lorentzian product with signature (+,...,+,-).
inline double lorentz(const Vec& a, const Vec& b) {
  const Eigen::Index k = a.size() - 1;
  return a.head(k).dot(b.head(k)) - a[k] * b[k];
}

/// Unit vector on S^n, stored as n+1 components.
class Direction {
 public:
  /// Throws SpecError unless |v| = 1 within 1e-12.
  explicit Direction(Vec v) : v_(std::move(v)) {
    if (v_.size() < 2) throw SpecError("direction needs at least 2 components");
    if (!v_.allFinite() || std::abs(v_.norm() - 1.0) > kDirectionTol)
      throw SpecError("direction is not a unit vector");
  }

  /// Normalizes v first. Throws SpecError on the zero vector.
  static Direction normalized(const Vec& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !v.allFinite()) throw SpecError("cannot normalize zero direction");
    return Direction(v / norm);
  }

  /// Unit vector at angle phi in the plane (n = 1).
  static Direction from_angle(double phi) {
    Vec v(2);
    v << std::cos(phi), std::sin(phi);
    return Direction(v);
  }

  /// The reference boundary direction e* = (0,...,0,1) of S^n.
  static Direction reference(int n) {
    Vec v = Vec::Zero(n + 1);
    v[n] = 1.0;
    return Direction(v);
  }

  const Vec& vec() const { return v_; }
  double operator[](Eigen::Index i) const { return v_[i]; }
  /// The n of S^n.
  int sphere_dim() const { return static_cast<int>(v_.size()) - 1; }
  double dot(const Direction& other) const { return v_.dot(other.v_); }
  Direction operator-() const { return Direction(-v_); }

 private:
  Vec v_;
};

class HyperboloidPoint {
 public:
  /// Throws SpecError unless <X,X> = -1 within 1e-10 and x_{n+2} > 0.
  explicit HyperboloidPoint(Vec x) : x_(std::move(x)) {
    if (x_.size() < 3) throw SpecError("hyperboloid point needs at least 3 coordinates");
    const double q = lorentz(x_, x_);
    // Relative check: large points carry cancellation error of order |x|^2 eps.
    const double scale = std::max(1.0, x_.squaredNorm());
    if (!x_.allFinite() || std::abs(q + 1.0) > kHyperboloidTol * scale || x_[x_.size() - 1] <= 0.0)
      throw SpecError("point is not on the upper hyperboloid sheet");
  }

  static HyperboloidPoint origin(int n) {
    Vec x = Vec::Zero(n + 2);
    x[n + 1] = 1.0;
    return HyperboloidPoint(x);
  }

  const Vec& vec() const { return x_; }
  int space_dim() const { return static_cast<int>(x_.size()) - 1; }  // n + 1
  auto spatial() const { return x_.head(x_.size() - 1); }
  double time() const { return x_[x_.size() - 1]; }

 private:
  Vec x_;
};

class BallPoint {
 public:
  explicit BallPoint(Vec y) : y_(std::move(y)) {
    if (!y_.allFinite() || y_.squaredNorm() >= 1.0) throw SpecError("ball point must have norm < 1");
  }
  const Vec& vec() const { return y_; }

 private:
  Vec y_;
};

class HalfSpacePoint {
 public:
  HalfSpacePoint(Vec horizontal, double height) : y_(std::move(horizontal)), h_(height) {
    if (!(h_ > 0.0) || !std::isfinite(h_) || !y_.allFinite())
      throw SpecError("half-space point must have positive height");
  }
  const Vec& horizontal() const { return y_; }
  double height() const { return h_; }

 private:
  Vec y_;
  double h_;
};

/// Geodesic distance. Uses d = 2 asinh(|X - Y|_L / 2), which equals
/// arccosh(-<X,Y>) and stays accurate for nearby points.
inline double geodesic_distance(const HyperboloidPoint& a, const HyperboloidPoint& b) {
  const Vec diff = a.vec() - b.vec();
  const double sq = std::max(0.0, lorentz(diff, diff));
  return 2.0 * std::asinh(0.5 * std::sqrt(sq));
}

/// (sinh r * theta, cosh r).
inline HyperboloidPoint polar_point(double r, const Direction& theta) {
  if (r < 0.0) throw SpecError("polar_point requires r >= 0");
  Vec x(theta.vec().size() + 1);
  x.head(theta.vec().size()) = std::sinh(r) * theta.vec();
  x[theta.vec().size()] = std::cosh(r);
  return HyperboloidPoint(x);
}

// --- model charts ----------------------------------------------------------

inline BallPoint to_ball(const HyperboloidPoint& p) {
  return BallPoint(p.spatial() / (1.0 + p.time()));
}

inline HyperboloidPoint from_ball(const BallPoint& b) {
  const double sq = b.vec().squaredNorm();
  Vec x(b.vec().size() + 1);
  x.head(b.vec().size()) = 2.0 * b.vec() / (1.0 - sq);
  x[b.vec().size()] = (1.0 + sq) / (1.0 - sq);
  return HyperboloidPoint(x);
}

inline HalfSpacePoint to_half_space(const HyperboloidPoint& p) {
  const Eigen::Index n = p.vec().size() - 2;
  // t - x_{n+1} = exp(-f_{e*}(X)) > 0 on the hyperboloid; the product form
  // 1 / (t + x_{n+1}) avoids cancellation when x_{n+1} is near t.
  const double tp = p.time() + p.vec()[n];
  const double denom = tp > 0.0 ? (1.0 + p.vec().head(n).squaredNorm()) / tp : p.time() - p.vec()[n];
  return HalfSpacePoint(p.vec().head(n) / denom, 1.0 / denom);
}

inline HyperboloidPoint from_half_space(const HalfSpacePoint& q) {
  const Eigen::Index n = q.horizontal().size();
  const double h = q.height();
  const double ysq = q.horizontal().squaredNorm();
  Vec x(n + 2);
  x.head(n) = q.horizontal() / h;
  x[n] = 0.5 * (h + ysq / h - 1.0 / h);
  x[n + 1] = 0.5 * (h + ysq / h + 1.0 / h);
  return HyperboloidPoint(x);
}

/// Boundary of the half-space chart: image of a direction e != e*.
/// Returns the contact point on R^n x {0}.
inline Vec boundary_to_half_space(const Direction& e) {
  const Eigen::Index n = e.vec().size() - 1;
  const double denom = 1.0 - e[n];
  if (denom <= 0.0) throw SpecError("reference direction maps to infinity");
  return e.vec().head(n) / denom;
}

/// Inverse of boundary_to_half_space.
inline Direction boundary_from_half_space(const Vec& p) {
  const double sq = p.squaredNorm();
  Vec e(p.size() + 1);
  e.head(p.size()) = 2.0 * p / (1.0 + sq);
  e[p.size()] = (sq - 1.0) / (sq + 1.0);
  return Direction::normalized(e);
}

enum class Model { Hyperboloid, Ball, HalfSpace };

using AnyPoint = std::variant<HyperboloidPoint, BallPoint, HalfSpacePoint>;

inline HyperboloidPoint to_hyperboloid(const AnyPoint& p) {
  if (const auto* h = std::get_if<HyperboloidPoint>(&p)) return *h;
  if (const auto* b = std::get_if<BallPoint>(&p)) return from_ball(*b);
  return from_half_space(std::get<HalfSpacePoint>(p));
}

/// Converts between the three models. Every route passes through the
/// hyperboloid, which is where isometries act linearly.
inline AnyPoint convert_model(const AnyPoint& p, Model target) {
  const HyperboloidPoint h = to_hyperboloid(p);
  switch (target) {
    case Model::Hyperboloid:
      return h;
    case Model::Ball:
      return to_ball(h);
    case Model::HalfSpace:
      return to_half_space(h);
  }
  throw SpecError("unknown model");
}

// --- isometries -------------------------------------------------------------

/// Linear map of Minkowski space preserving the Lorentzian form and the
/// upper sheet.
class Isometry {
 public:
  explicit Isometry(Mat m) : m_(std::move(m)) {
    const Eigen::Index k = m_.rows();
    if (m_.cols() != k || k < 3) throw SpecError("isometry matrix must be square of size >= 3");
    const Mat eta = metric(k);
    const double defect = (m_.transpose() * eta * m_ - eta).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if (defect > kHyperboloidTol * scale * scale || m_(k - 1, k - 1) <= 0.0)
      throw SpecError("matrix is not an isometry of the upper sheet");
  }

  static Isometry identity(int n) { return Isometry(Mat::Identity(n + 2, n + 2)); }

  /// Orthogonal map of R^{n+1} acting on the spatial coordinates.
  static Isometry rotation(const Mat& q) {
    const Eigen::Index k = q.rows() + 1;
    Mat m = Mat::Identity(k, k);
    m.topLeftCorner(k - 1, k - 1) = q;
    return Isometry(m);
  }

  /// Hyperbolic translation moving O to polar_point(distance, dir).
  static Isometry translation(double distance, const Direction& dir) {
    return boost_from_origin(polar_point(distance, dir));
  }

  /// The boost that sends O to X, fixing the directions orthogonal to its
  /// displacement.
  static Isometry boost_from_origin(const HyperboloidPoint& x) {
    const Eigen::Index k = x.vec().size();
    const Vec s = x.spatial();
    const double t = x.time();
    Mat m(k, k);
    m.topLeftCorner(k - 1, k - 1) = Mat::Identity(k - 1, k - 1) + s * s.transpose() / (1.0 + t);
    m.topRightCorner(k - 1, 1) = s;
    m.bottomLeftCorner(1, k - 1) = s.transpose();
    m(k - 1, k - 1) = t;
    return Isometry(m);
  }

  const Mat& matrix() const { return m_; }
  int space_dim() const { return static_cast<int>(m_.rows()) - 1; }

  HyperboloidPoint operator()(const HyperboloidPoint& x) const { return HyperboloidPoint(m_ * x.vec()); }
  Vec apply(const Vec& v) const { return m_ * v; }

  /// (this * other)(X) = this(other(X)).
  Isometry operator*(const Isometry& other) const { return Isometry(m_ * other.m_); }

  /// eta M^T eta.
  Isometry inverse() const {
    const Mat eta = metric(m_.rows());
    return Isometry(eta * m_.transpose() * eta);
  }

  static Mat metric(Eigen::Index k) {
    Mat eta = Mat::Identity(k, k);
    eta(k - 1, k - 1) = -1.0;
    return eta;
  }

 private:
  Mat m_;
};

/// Isometry sending X to the origin.
inline Isometry boost_to_origin(const HyperboloidPoint& x) {
  return Isometry::boost_from_origin(x).inverse();
}

/// Orthogonal matrix of R^{n+1} sending `from` to `to` (a Householder
/// reflection, or the identity when they already coincide).
inline Mat reflection_onto(const Direction& from, const Direction& to) {
  const Vec v = from.vec() - to.vec();
  const Eigen::Index k = v.size();
  const double sq = v.squaredNorm();
  if (sq < 1e-30) return Mat::Identity(k, k);
  return Mat::Identity(k, k) - 2.0 * v * v.transpose() / sq;
}

}  // namespace horomink
