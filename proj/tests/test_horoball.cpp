#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "horomink/detail/search.hpp"
#include "horomink/horoball.hpp"
#include "horomink/random.hpp"

using namespace horomink;

namespace {

// Root of cosh(l) - c sinh(l) = e^s by bisection; independent of the
// quadratic closed form.
double radial_bisection(double s, double c) {
  auto g = [&](double l) { return std::cosh(l) - c * std::sinh(l) - std::exp(s); };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Direction random_dir(CounterRng& rng, int n) { return Direction::normalized(rng.unit_vector(n + 1)); }

}  // namespace

TEST(Busemann, ValueAtOrigin) {
  EXPECT_EQ(busemann_value(Direction::from_angle(0.4), HyperboloidPoint::origin(1)), 0.0);
}

TEST(Busemann, AwayFromAndTowardCenter) {
  const Direction e = Direction::normalized(Vec::Ones(3));
  EXPECT_NEAR(busemann_value(e, polar_point(2.2, -e)), 2.2, 1e-12);
  EXPECT_NEAR(busemann_value(e, polar_point(2.2, e)), -2.2, 1e-12);
}

TEST(Contains, OriginAgainstSignOfParameter) {
  const Direction e = Direction::from_angle(1.0);
  EXPECT_TRUE(horoball_contains({e, 1.0}, HyperboloidPoint::origin(1)));
  EXPECT_FALSE(horoball_contains({e, -1.0}, HyperboloidPoint::origin(1)));
}

TEST(Contains, BoundaryPointStrictness) {
  const Direction e = Direction::from_angle(0.0);
  const HyperboloidPoint x = polar_point(0.75, -e);
  const Horoball b{e, busemann_value(e, x)};
  EXPECT_FALSE(horoball_contains(b, x, true));
  EXPECT_TRUE(horoball_contains(b, x, false));
}

TEST(Radial, OppositeDirectionGivesParameter) {
  const Direction e = Direction::from_angle(2.0);
  EXPECT_NEAR(horoball_radial({e, 0.8}, -e), 0.8, 1e-14);
}

TEST(Radial, TowardCenterIsUnbounded) {
  const Direction e = Direction::from_angle(2.0);
  EXPECT_EQ(horoball_radial({e, 0.8}, e), kUnbounded);
}

TEST(Radial, OrthogonalDirectionMatchesBisection) {
  const double expected = radial_bisection(std::log(2.0), 0.0);
  EXPECT_NEAR(expected, std::log(2.0 + std::sqrt(3.0)), 1e-12);
  const Horoball b{Direction::from_angle(0.0), std::log(2.0)};
  EXPECT_NEAR(horoball_radial(b, Direction::from_angle(0.5 * std::numbers::pi)), expected, 1e-12);
  EXPECT_NEAR(expected, 1.31696, 1e-5);
}

TEST(Radial, ClosedFormMatchesBisectionOracle) {
  CounterRng rng(41);
  for (int k = 0; k < 200; ++k) {
    const double s = rng.uniform(0.05, 3.0), c = rng.uniform(-1.0, 0.99);
    EXPECT_NEAR(horoball_radial_from_cosine(s, c), radial_bisection(s, c), 1e-9);
  }
}

TEST(Radial, NearSingularCosineIsUnbounded) {
  EXPECT_EQ(horoball_radial_from_cosine(1.0, 1.0 - 1e-10), kUnbounded);
  EXPECT_TRUE(std::isfinite(horoball_radial_from_cosine(1.0, 1.0 - 1e-8)));
}

TEST(Radial, RequiresPositiveParameter) {
  EXPECT_THROW(horoball_radial({Direction::from_angle(0.0), 0.0}, Direction::from_angle(1.0)), SpecError);
}

TEST(Radial, HitsTheHorosphere) {
  CounterRng rng(42);
  for (int k = 0; k < 500; ++k) {
    const int n = 1 + k % 3;
    const Direction e = random_dir(rng, n), th = random_dir(rng, n);
    const double s = rng.uniform(0.01, 3.0);
    const double r = horoball_radial({e, s}, th);
    if (!std::isfinite(r)) continue;
    EXPECT_NEAR(busemann_value(e, polar_point(r, th)), s, 1e-9);
  }
}

TEST(Transform, IdentityKeepsHoroball) {
  const Horoball b{Direction::from_angle(0.9), 0.6};
  const Horoball t = horoball_transform(b, Isometry::identity(1));
  EXPECT_LE((t.center.vec() - b.center.vec()).norm(), 1e-15);
  EXPECT_NEAR(t.s, b.s, 1e-15);
}

TEST(Transform, TranslationTowardCenterLowersParameter) {
  CounterRng rng(43);
  for (int k = 0; k < 20; ++k) {
    const Direction e = random_dir(rng, 2);
    const double s = rng.uniform(-1.0, 2.0), d = rng.uniform(0.0, 2.0);
    const Isometry t = Isometry::translation(d, e);
    const Horoball img = horoball_transform({e, s}, t);
    EXPECT_LE((img.center.vec() - e.vec()).norm(), 1e-9);
    EXPECT_NEAR(img.s, s - d, 1e-9);
    EXPECT_NEAR(busemann_value(e, t(HyperboloidPoint::origin(2))), -d, 1e-12);
    // Membership is carried along by the isometry.
    for (int j = 0; j < 50; ++j) {
      const HyperboloidPoint x = polar_point(rng.uniform(0.0, 3.0), random_dir(rng, 2));
      const double fx = busemann_value(e, x);
      if (std::abs(fx - s) < 1e-9) continue;
      EXPECT_EQ(horoball_contains({e, s}, x), horoball_contains(img, t(x)));
    }
  }
}

TEST(Transform, RotationMovesCenter) {
  CounterRng rng(44);
  const Direction e = random_dir(rng, 2), f = random_dir(rng, 2);
  const Mat r = reflection_onto(e, f);
  const Horoball img = horoball_transform({e, 0.4}, Isometry::rotation(r));
  EXPECT_LE((img.center.vec() - f.vec()).norm(), 1e-12);
  EXPECT_NEAR(img.s, 0.4, 1e-12);
}

TEST(Transform, Composes) {
  CounterRng rng(45);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 2;
    const Horoball b{random_dir(rng, n), rng.uniform(-1.0, 2.0)};
    const Isometry a = Isometry::translation(rng.uniform(0.0, 1.5), random_dir(rng, n));
    const Isometry c = Isometry::translation(rng.uniform(0.0, 1.5), random_dir(rng, n));
    const Horoball once = horoball_transform(b, c * a);
    const Horoball twice = horoball_transform(horoball_transform(b, a), c);
    EXPECT_NEAR(once.s, twice.s, 1e-9);
    EXPECT_LE((once.center.vec() - twice.center.vec()).norm(), 1e-9);
  }
}

TEST(HalfSpaceForm, ReferenceCenterIsPlane) {
  const auto f = halfspace_form({Direction::reference(2), 0.7});
  EXPECT_EQ(f.kind, HalfSpaceHoroballForm::Kind::Plane);
  EXPECT_NEAR(f.height, std::exp(-0.7), 1e-15);
}

TEST(HalfSpaceForm, ContactAtZero) {
  const auto f = halfspace_form({-Direction::reference(1), 0.5});
  ASSERT_EQ(f.kind, HalfSpaceHoroballForm::Kind::Ball);
  EXPECT_NEAR(f.contact.norm(), 0.0, 1e-15);
  EXPECT_NEAR(f.radius, std::exp(0.5) / 2.0, 1e-14);
}

TEST(HalfSpaceForm, TBodyContactRadius) {
  // Contact |p| = e^{r/2} with s = 0 gives radius (1 + e^r) / 2.
  const double r = 2.0;
  Vec p(2);
  p << std::exp(r / 2) * std::cos(0.3), std::exp(r / 2) * std::sin(0.3);
  const auto f = halfspace_form({boundary_from_half_space(p), 0.0});
  ASSERT_EQ(f.kind, HalfSpaceHoroballForm::Kind::Ball);
  EXPECT_NEAR((f.contact - p).norm(), 0.0, 1e-10);
  EXPECT_NEAR(f.radius, (1.0 + std::exp(r)) / 2.0, 1e-10);
}

TEST(HalfSpaceForm, MembershipAgreesWithBusemann) {
  CounterRng rng(46);
  int disagreements = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + k % 3;
    const Horoball b{random_dir(rng, n), rng.uniform(-1.0, 2.0)};
    const HyperboloidPoint x = polar_point(rng.uniform(0.0, 3.0), random_dir(rng, n));
    if (std::abs(busemann_value(b.center, x) - b.s) < 1e-9) continue;
    const auto hs = std::get<HalfSpacePoint>(convert_model(x, Model::HalfSpace));
    if (halfspace_form(b).contains(hs.horizontal(), hs.height()) != horoball_contains(b, x)) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(ParallelHorosphere, DistanceBetweenNestedHorospheresIsEpsilon) {
  // Points of H_e(s) in the chart where e is at infinity: (y, e^{-s}). The
  // distance to H_e(s + eps) is minimized over its points (y', e^{-s-eps}).
  CounterRng rng(47);
  for (int k = 0; k < 20; ++k) {
    const double s = rng.uniform(-1.0, 1.5), eps = rng.uniform(0.01, 0.5);
    const Direction e = random_dir(rng, 1);
    const Isometry rot = Isometry::rotation(reflection_onto(Direction::reference(1), e));
    Vec y0(1);
    y0 << rng.uniform(-2.0, 2.0);
    const HyperboloidPoint x = rot(from_half_space(HalfSpacePoint(y0, std::exp(-s))));
    ASSERT_NEAR(busemann_value(e, x), s, 1e-9);
    auto neg_dist = [&](double y) {
      Vec v(1);
      v << y;
      return -geodesic_distance(x, rot(from_half_space(HalfSpacePoint(v, std::exp(-s - eps)))));
    };
    const double best = -detail::golden_max(neg_dist, y0[0] - 5.0, y0[0] + 5.0, 1e-12, 200).second;
    EXPECT_NEAR(best, eps, 1e-8);
  }
}
