#include <gtest/gtest.h>

#include <cmath>

#include "horomink/geometry.hpp"
#include "horomink/random.hpp"

using namespace horomink;

namespace {

HyperboloidPoint random_point(CounterRng& rng, int n, double max_r = 3.0) {
  return polar_point(rng.uniform(0.0, max_r), Direction::normalized(rng.unit_vector(n + 1)));
}

// Arclength of the geodesic X -> Y, parameterized by normalizing the chord
// (1-t) X + t Y back onto the hyperboloid, integrated with a fine midpoint rule.
double arclength_oracle(const HyperboloidPoint& x, const HyperboloidPoint& y) {
  auto on_curve = [&](double t) {
    const Vec v = (1.0 - t) * x.vec() + t * y.vec();
    return Vec(v / std::sqrt(-lorentz(v, v)));
  };
  const int steps = 20000;
  double len = 0.0;
  Vec prev = on_curve(0.0);
  for (int k = 1; k <= steps; ++k) {
    const Vec cur = on_curve(static_cast<double>(k) / steps);
    const Vec d = cur - prev;
    len += std::sqrt(std::max(0.0, lorentz(d, d)));
    prev = cur;
  }
  return len;
}

bool is_lorentz_orthogonal(const Mat& m) {
  const Mat eta = Isometry::metric(m.rows());
  return (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff() <= 1e-10;
}

}  // namespace

TEST(Distance, OriginToItselfIsZero) {
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(geodesic_distance(HyperboloidPoint::origin(n), HyperboloidPoint::origin(n)), 0.0);
}

TEST(Distance, UnitPolarPoint) {
  CounterRng rng(11);
  for (int k = 0; k < 20; ++k) {
    const Direction th = Direction::normalized(rng.unit_vector(3));
    EXPECT_NEAR(geodesic_distance(HyperboloidPoint::origin(2), polar_point(1.0, th)), 1.0, 1e-12);
  }
}

TEST(Distance, MatchesArclengthOracle) {
  CounterRng rng(12);
  for (int k = 0; k < 10; ++k) {
    const auto x = random_point(rng, 2), y = random_point(rng, 2);
    EXPECT_NEAR(geodesic_distance(x, y), arclength_oracle(x, y), 1e-6);
  }
}

TEST(Distance, SymmetricAndNonNegative) {
  CounterRng rng(13);
  for (int k = 0; k < 200; ++k) {
    const auto x = random_point(rng, 1), y = random_point(rng, 1);
    EXPECT_EQ(geodesic_distance(x, y), geodesic_distance(y, x));
    EXPECT_GE(geodesic_distance(x, y), 0.0);
  }
}

TEST(Distance, CoincidentPointsDoNotProduceNaN) {
  const auto x = polar_point(7.0, Direction::from_angle(0.3));
  EXPECT_EQ(geodesic_distance(x, x), 0.0);
}

TEST(PolarPoint, ZeroRadiusIsOrigin) {
  const auto x = polar_point(0.0, Direction::from_angle(1.0));
  EXPECT_EQ(x.vec(), HyperboloidPoint::origin(1).vec());
}

TEST(PolarPoint, TimeCoordinateIsCoshR) {
  EXPECT_DOUBLE_EQ(polar_point(1.7, Direction::from_angle(2.0)).time(), std::cosh(1.7));
}

TEST(PolarPoint, DistanceRoundTrip) {
  const Direction th = Direction::normalized(Vec::Ones(4));
  EXPECT_NEAR(geodesic_distance(HyperboloidPoint::origin(3), polar_point(2.5, th)), 2.5, 1e-12);
}

TEST(Types, DirectionRejectsNonUnit) {
  Vec v(2);
  v << 1.0, 1e-5;
  EXPECT_THROW(Direction{v}, SpecError);
  EXPECT_NO_THROW(Direction::normalized(v));
}

TEST(Types, HyperboloidPointRejectsOffSheet) {
  Vec v(3);
  v << 0.0, 0.0, 1.1;
  EXPECT_THROW(HyperboloidPoint{v}, SpecError);
  v << 0.0, 0.0, -1.0;
  EXPECT_THROW(HyperboloidPoint{v}, SpecError);
}

TEST(Types, BallPointRejectsOutside) {
  Vec v(2);
  v << 0.6, 0.8;
  EXPECT_THROW(BallPoint{v}, SpecError);
}

TEST(Models, OriginImages) {
  const auto o = HyperboloidPoint::origin(2);
  EXPECT_EQ(to_ball(o).vec().norm(), 0.0);
  const HalfSpacePoint h = to_half_space(o);
  EXPECT_EQ(h.horizontal().norm(), 0.0);
  EXPECT_DOUBLE_EQ(h.height(), 1.0);
}

TEST(Models, BallOfProjectionInverts) {
  CounterRng rng(21);
  for (int k = 0; k < 100; ++k) {
    const auto x = random_point(rng, 2);
    EXPECT_LE((from_ball(to_ball(x)).vec() - x.vec()).norm(), 1e-10 * x.time());
  }
}

TEST(Models, RoundTripsBetweenEveryPair) {
  CounterRng rng(22);
  const Model models[] = {Model::Hyperboloid, Model::Ball, Model::HalfSpace};
  for (int k = 0; k < 1000; ++k) {
    const auto x = random_point(rng, 1 + k % 3, 2.5);
    for (Model a : models) {
      const AnyPoint pa = convert_model(x, a);
      for (Model b : models) {
        const HyperboloidPoint back = to_hyperboloid(convert_model(convert_model(pa, b), a));
        ASSERT_LE((back.vec() - x.vec()).norm(), 1e-10 * x.time() * x.time());
      }
    }
  }
}

TEST(Models, HalfSpaceChartPreservesDistance) {
  CounterRng rng(23);
  for (int k = 0; k < 100; ++k) {
    const auto x = random_point(rng, 2), y = random_point(rng, 2);
    const HalfSpacePoint a = to_half_space(x), b = to_half_space(y);
    const double arg = 1.0 + ((a.horizontal() - b.horizontal()).squaredNorm() + std::pow(a.height() - b.height(), 2)) /
                                 (2.0 * a.height() * b.height());
    EXPECT_NEAR(std::acosh(arg), geodesic_distance(x, y), 1e-8);
  }
}

TEST(Models, ReferenceDirectionGoesToInfinity) {
  // Moving toward e* drives the half-space height to infinity.
  const Direction star = Direction::reference(2);
  EXPECT_GT(to_half_space(polar_point(10.0, star)).height(), 1e4);
  EXPECT_LT(to_half_space(polar_point(10.0, -star)).height(), 1e-4);
}

TEST(Models, BoundaryChartRoundTrip) {
  CounterRng rng(24);
  for (int k = 0; k < 100; ++k) {
    const Direction e = Direction::normalized(rng.unit_vector(3));
    if (e[2] > 0.99) continue;
    EXPECT_LE((boundary_from_half_space(boundary_to_half_space(e)).vec() - e.vec()).norm(), 1e-10);
  }
}

TEST(Isometries, BoostOfOriginIsIdentity) {
  const Isometry b = boost_to_origin(HyperboloidPoint::origin(2));
  EXPECT_LE((b.matrix() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Isometries, BoostSendsPointToOrigin) {
  CounterRng rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto x = random_point(rng, 2, 4.0);
    const HyperboloidPoint moved = boost_to_origin(x)(x);
    EXPECT_LE((moved.vec() - HyperboloidPoint::origin(2).vec()).norm(), 1e-9 * x.time());
  }
}

TEST(Isometries, PreserveLorentzProducts) {
  CounterRng rng(32);
  for (int k = 0; k < 50; ++k) {
    const Isometry b = boost_to_origin(random_point(rng, 1, 2.0));
    const auto x = random_point(rng, 1, 2.0), y = random_point(rng, 1, 2.0);
    EXPECT_NEAR(lorentz(b(x).vec(), b(y).vec()), lorentz(x.vec(), y.vec()), 1e-10 * x.time() * y.time() * 10);
  }
}

TEST(Isometries, AllConstructorsAreLorentzOrthogonal) {
  CounterRng rng(33);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 3;
    const auto x = random_point(rng, n, 2.0);
    const Direction d = Direction::normalized(rng.unit_vector(n + 1));
    const Direction f = Direction::normalized(rng.unit_vector(n + 1));
    const Isometry t = Isometry::translation(rng.uniform(0.0, 2.0), d);
    const Isometry r = Isometry::rotation(reflection_onto(d, f));
    const Isometry b = Isometry::boost_from_origin(x);
    for (const Isometry& iso : {t, r, b, t * r * b, b.inverse(), boost_to_origin(x)})
      EXPECT_TRUE(is_lorentz_orthogonal(iso.matrix()));
  }
}

TEST(Isometries, InverseComposesToIdentity) {
  CounterRng rng(34);
  const Isometry b = Isometry::boost_from_origin(random_point(rng, 3));
  EXPECT_LE(((b * b.inverse()).matrix() - Mat::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Isometries, TranslationMovesOriginByDistance) {
  const Direction d = Direction::from_angle(0.7);
  const HyperboloidPoint moved = Isometry::translation(1.3, d)(HyperboloidPoint::origin(1));
  EXPECT_NEAR(geodesic_distance(moved, HyperboloidPoint::origin(1)), 1.3, 1e-12);
  EXPECT_LE((moved.vec() - polar_point(1.3, d).vec()).norm(), 1e-12);
}

TEST(Isometries, ReflectionOntoMapsDirection) {
  CounterRng rng(35);
  for (int k = 0; k < 20; ++k) {
    const Direction a = Direction::normalized(rng.unit_vector(3));
    const Direction b = Direction::normalized(rng.unit_vector(3));
    EXPECT_LE((reflection_onto(a, b) * a.vec() - b.vec()).norm(), 1e-12);
  }
}

TEST(Isometries, RejectsNonIsometricMatrix) {
  Mat m = Mat::Identity(3, 3);
  m(0, 0) = 2.0;
  EXPECT_THROW(Isometry{m}, SpecError);
}
