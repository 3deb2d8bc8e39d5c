#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "horomink/facets.hpp"
#include "support.hpp"

using namespace horomink;
using hm_test::lens;

namespace {
const double kLog2 = std::log(2.0);

double lens_area(int n, double x1, double x2) {
  return unit_ball_volume(n) * std::pow(std::exp(x1 + x2) - 1.0, 0.5 * n);
}
}  // namespace

TEST(FacetArea, PlanarLensExact) {
  const HConvexPolytope p = build_polytope(lens(1, kLog2));
  EXPECT_NEAR(facet_area(p, 0), 2.0 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(facet_area(p, 1), 2.0 * std::sqrt(3.0), 1e-12);
}

TEST(FacetArea, PlanarLensAsymmetric) {
  hm_test::CounterRng rng(61);
  for (int k = 0; k < 20; ++k) {
    const double x1 = rng.uniform(0.1, 2.5), x2 = rng.uniform(0.1, 2.5);
    const HConvexPolytope p = build_polytope(lens(1, x1, x2));
    EXPECT_NEAR(facet_area(p, 0), lens_area(1, x1, x2), 1e-10 * lens_area(1, x1, x2));
    EXPECT_NEAR(facet_area(p, 1), lens_area(1, x1, x2), 1e-10 * lens_area(1, x1, x2));
  }
}

TEST(FacetArea, SpatialLensExactAndMonteCarlo) {
  const PolytopeSpec spec = lens(2, kLog2);
  EXPECT_NEAR(facet_area_of(spec, 0), 3.0 * std::numbers::pi, 1e-10);
  FacetOptions mc;
  mc.method = FacetMethod::MonteCarlo;
  mc.samples = 200000;
  mc.seed = 3;
  EXPECT_NEAR(facet_area_of(spec, 1, mc), 3.0 * std::numbers::pi, 0.01 * 3.0 * std::numbers::pi);
}

TEST(FacetArea, ThreeDimensionalLensMonteCarlo) {
  FacetOptions mc;
  mc.samples = 200000;
  mc.seed = 4;
  const double exact = lens_area(3, 0.5, 0.9);
  EXPECT_NEAR(facet_area_of(lens(3, 0.5, 0.9), 0, mc), exact, 0.01 * exact);
}

TEST(FacetArea, ExactAndMonteCarloAgreeOnRandomSpatialPolytopes) {
  hm_test::CounterRng rng(62);
  for (int k = 0; k < 5; ++k) {
    const PolytopeSpec spec = hm_test::random_spec(rng, 2, 5, 0.3, 1.5);
    const HConvexPolytope p = build_polytope(spec);
    FacetOptions mc;
    mc.method = FacetMethod::MonteCarlo;
    mc.samples = 200000;
    mc.seed = 10 + k;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double exact = facet_area(p, i);
      const double est = facet_area(p, i, mc);
      EXPECT_NEAR(est, exact, 0.02 * exact + 1e-3) << "facet " << i;
    }
  }
}

TEST(FacetArea, RedundantFacetIsZero) {
  PolytopeSpec spec = lens(1, kLog2);
  spec.horoballs.push_back({Direction::from_angle(0.0), 10.0});
  const HConvexPolytope p = build_polytope(spec);
  EXPECT_EQ(facet_area(p, 2), 0.0);
  EXPECT_EQ(facet_area_of(spec, 2), 0.0);
  EXPECT_NEAR(facet_area_fd(p, 2, default_quadrature(1)), 0.0, 1e-6);
}

TEST(FacetArea, FiniteDifferenceOnLens) {
  const double fd = facet_area_fd(build_polytope(lens(1, kLog2)), 0, default_quadrature(1));
  EXPECT_NEAR(fd, 2.0 * std::sqrt(3.0), 1e-3 * 2.0 * std::sqrt(3.0));
}

TEST(FacetArea, FiniteDifferenceOnRandomPolytopes) {
  hm_test::CounterRng rng(63);
  const auto quad = default_quadrature(1);
  for (int k = 0; k < 10; ++k) {
    const HConvexPolytope p = build_polytope(hm_test::random_spec_n1(rng, 4));
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double a = facet_area(p, i);
      EXPECT_LE(std::abs(a - facet_area_fd(p, i, quad)) / std::max(a, 1e-8), 1e-3) << "polytope " << k << " facet " << i;
    }
  }
}

TEST(FacetArea, PairedFacetsOfEvenBodiesAgree) {
  hm_test::CounterRng rng(64);
  for (int k = 0; k < 10; ++k) {
    const auto mu = hm_test::random_even_measure_n1(rng, 3);
    std::vector<Direction> half;
    std::vector<double> z;
    for (std::size_t i = 0; i < 3; ++i) {
      half.push_back(mu.atoms[i].e);
      z.push_back(rng.uniform(0.2, 2.0));
    }
    const HConvexPolytope p = build_polytope(PolytopeSpec::even_from_half(half, z));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(facet_area(p, i), facet_area(p, i + 3), 1e-6);
  }
}

TEST(FacetArea, MonteCarloIsSeedDeterministic) {
  FacetOptions mc;
  mc.method = FacetMethod::MonteCarlo;
  mc.samples = 50000;
  mc.seed = 17;
  const PolytopeSpec spec = lens(2, 0.8);
  EXPECT_EQ(facet_area_of(spec, 0, mc), facet_area_of(spec, 0, mc));
}

TEST(SurfaceMeasure, LensAtomsAtZeroPower) {
  const double s = 0.9;
  const HConvexPolytope p = build_polytope(lens(1, s));
  const DiscreteMeasure mu = surface_measure_p(p, 0.0);
  ASSERT_EQ(mu.size(), 2u);
  const double expected = 2.0 * std::sqrt(std::exp(2.0 * s) - 1.0);
  EXPECT_NEAR(mu.atoms[0].a, expected, 1e-12);
  EXPECT_NEAR(mu.atoms[1].a, expected, 1e-12);
  EXPECT_LE((mu.atoms[0].e.vec() - Direction::reference(1).vec()).norm(), 0.0);
}

TEST(SurfaceMeasure, PowerScalesEachAtom) {
  hm_test::CounterRng rng(65);
  const HConvexPolytope p = build_polytope(hm_test::random_spec_n1(rng, 5));
  const DiscreteMeasure base = surface_measure_p(p, 0.0);
  for (double power : {-2.0, -1.0, 0.5, 3.0}) {
    const DiscreteMeasure mu = surface_measure_p(p, power);
    ASSERT_EQ(mu.size(), base.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
      std::size_t i = 0;
      while ((p.spec().horoballs[i].center.vec() - mu.atoms[k].e.vec()).norm() > 0.0) ++i;
      EXPECT_NEAR(mu.atoms[k].a, std::exp(-power * p.canonical_support()[i]) * base.atoms[k].a, 1e-12 * base.atoms[k].a);
    }
  }
  const double s = 0.4;
  const DiscreteMeasure lm = surface_measure_p(build_polytope(lens(1, s)), 2.0);
  EXPECT_NEAR(lm.atoms[0].a, std::exp(-2.0 * s) * 2.0 * std::sqrt(std::exp(2.0 * s) - 1.0), 1e-12);
}
