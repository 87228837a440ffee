#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "capheight/error.hpp"
#include "capheight/setgeom.hpp"

using namespace capheight;

TEST(SetGeom, ValidatingConstructors) {
  EXPECT_THROW(make_disk(0, 0), Error);
  EXPECT_THROW(make_circle(0, -1), Error);
  EXPECT_THROW(make_interval(1, 1), Error);
  EXPECT_THROW(make_interval(2, 1), Error);
  EXPECT_THROW(make_julia(IntPolynomial{1, 1}), Error);
  EXPECT_THROW(make_arc(std::vector<Complex>{Complex(0, 0)}), Error);
  EXPECT_THROW(make_union({}), Error);
  EXPECT_THROW(make_disk(Complex(std::nan(""), 0), 1), Error);
  try {
    make_disk(0, -1);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSet);
  }
}

TEST(SampleBoundary, CircleFourPoints) {
  const BoundarySample s = sample_boundary(make_circle(0, 1), 4);
  ASSERT_EQ(s.size(), 4u);
  const Complex expected[] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(s.point(static_cast<std::size_t>(i)) - expected[i]), 0.0, 1e-15);
    EXPECT_NEAR(s.spacing[static_cast<std::size_t>(i)], std::numbers::pi / 2, 1e-15);
  }
}

TEST(SampleBoundary, IntervalChebyshevNodes) {
  const BoundarySample s = sample_boundary(make_interval(-1, 1), 2);
  ASSERT_EQ(s.size(), 2u);
  std::vector<double> x = {s.point(0).real(), s.point(1).real()};
  std::sort(x.begin(), x.end());
  EXPECT_NEAR(x[0], -std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(x[1], std::sqrt(0.5), 1e-15);
}

TEST(SampleBoundary, DiskEqualsCircle) {
  for (int m : {3, 16, 101}) {
    const auto a = sample_boundary(make_disk(Complex(0.3, -1), 2), m);
    const auto b = sample_boundary(make_circle(Complex(0.3, -1), 2), m);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.point(i), b.point(i));
  }
}

TEST(SampleBoundary, PointsLieOnClosedFormBoundaries) {
  for (int m : {8, 64, 257}) {
    const auto c = sample_boundary(make_circle(Complex(1, 2), 0.7), m);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(std::abs(c.point(i) - Complex(1, 2)), 0.7, 1e-12);
    const auto iv = sample_boundary(make_interval(-3, 5), m);
    for (std::size_t i = 0; i < iv.size(); ++i) {
      EXPECT_EQ(iv.point(i).imag(), 0.0);
      EXPECT_GE(iv.point(i).real(), -3.0 - 1e-12);
      EXPECT_LE(iv.point(i).real(), 5.0 + 1e-12);
    }
  }
}

TEST(SampleBoundary, SpacingSumsToLength) {
  EXPECT_NEAR(sample_boundary(make_circle(0, 2), 100).total_length(), 4 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(sample_boundary(make_interval(-1, 3), 100).total_length(), 4.0, 1e-12);
}

TEST(SampleBoundary, JuliaPointsNearJuliaSet) {
  // z^2 - 2 has Julia set [-2, 2]
  const auto s = sample_boundary(make_julia(IntPolynomial{-2, 0, 1}), 200);
  ASSERT_EQ(s.size(), 200u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(s.point(i).imag(), 0.0, 1e-2);
    EXPECT_LE(std::abs(s.point(i).real()), 2.0 + 1e-2);
  }
  // z^2: the unit circle
  const auto c = sample_boundary(make_julia(IntPolynomial{0, 0, 1}), 128);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(std::abs(c.point(i)), 1.0, 1e-2);
}

TEST(SampleBoundary, UnionDropsCoveredPoints) {
  const auto u = make_union({make_disk(0, 1), make_circle(0, 0.5)});
  const auto s = sample_boundary(u, 100);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(s.point(i)), 1.0, 1e-12);
  EXPECT_THROW(sample_boundary(make_circle(0, 1), 1), Error);
}

TEST(Conjugation, KnownValues) {
  EXPECT_TRUE(check_conjugation_symmetry(make_interval(-1, 1)));
  EXPECT_FALSE(check_conjugation_symmetry(make_disk(Complex(0, 1), 0.1)));
  EXPECT_TRUE(check_conjugation_symmetry(make_union({make_disk(1, 0.2), make_disk(-1, 0.2)})));
  EXPECT_TRUE(check_conjugation_symmetry(make_julia(IntPolynomial{-1, 0, 1})));
}

TEST(Conjugation, InvariantUnderConjugate) {
  const std::vector<SetDescriptor> sets = {
      make_disk(Complex(0, 1), 0.1), make_interval(-2, 1), make_circle(Complex(0.5, 0.5), 1),
      make_arc(std::vector<Complex>{Complex(0, 1), Complex(1, 1), Complex(2, 0.5)}),
      make_union({make_disk(Complex(1, 0.3), 0.2), make_disk(Complex(1, -0.3), 0.2)})};
  for (const auto& s : sets) EXPECT_EQ(check_conjugation_symmetry(s), check_conjugation_symmetry(conjugate(s))) << describe(s);
}

TEST(UnboundedComponent, KnownValues) {
  EXPECT_TRUE(in_unbounded_component(make_disk(0, 1), 2.0));
  EXPECT_FALSE(in_unbounded_component(make_disk(0, 1), 0.0));
  EXPECT_FALSE(in_unbounded_component(make_circle(0, 1), 0.0));
  EXPECT_TRUE(in_unbounded_component(make_interval(-1, 1), Complex(0, 0.5)));
  EXPECT_FALSE(in_unbounded_component(make_julia(IntPolynomial{-1, 0, 1}), 0.0));
  EXPECT_TRUE(in_unbounded_component(make_julia(IntPolynomial{-1, 0, 1}), 3.0));
}

TEST(UnboundedComponent, AmbiguousOnBoundary) {
  try {
    in_unbounded_component(make_circle(0, 1), 1.0);
    FAIL() << "expected AmbiguousPoint";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbiguousPoint);
  }
}

TEST(UnboundedComponent, GeometricRuleMatchesFloodFill) {
  std::mt19937_64 rng(42);
  const std::vector<SetDescriptor> sets = {make_disk(Complex(0.2, 0), 1), make_circle(0, 1), make_interval(-1, 1),
                                           make_arc(std::vector<Complex>{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)}, true)};
  for (const auto& set : sets) {
    const BoundingDisk bd = bounding_disk(set);
    std::uniform_real_distribution<double> u(-1.5 * bd.radius, 1.5 * bd.radius);
    int probes = 0;
    while (probes < 100) {
      const Complex z = bd.center + Complex(u(rng), u(rng));
      if (distance_to_set(set, z) < 0.02 * bd.radius) continue;
      ++probes;
      EXPECT_EQ(in_unbounded_component(set, z), in_unbounded_component_grid(set, z, 512)) << describe(set) << " at " << z;
    }
  }
}

TEST(UnboundedComponent, UnionEnclosure) {
  // a closed arc around a small disk: the disk's neighbourhood is enclosed
  const auto ring = make_arc(std::vector<Complex>{Complex(2, 0), Complex(0, 2), Complex(-2, 0), Complex(0, -2)}, true);
  const auto u = make_union({ring, make_disk(0, 0.2)});
  EXPECT_FALSE(in_unbounded_component(u, Complex(0.5, 0)));
  EXPECT_TRUE(in_unbounded_component(u, Complex(3, 0)));
}

TEST(SetGeom, BoundingDiskAndDistance) {
  const BoundingDisk bd = bounding_disk(make_interval(-1, 3));
  EXPECT_NEAR(bd.center.real(), 1.0, 1e-12);
  EXPECT_NEAR(bd.radius, 2.0, 1e-12);
  EXPECT_NEAR(distance_to_set(make_disk(0, 1), 3.0), 2.0, 1e-12);
  EXPECT_NEAR(distance_to_set(make_disk(0, 1), 0.5), 0.0, 1e-12);
  EXPECT_NEAR(distance_to_set(make_circle(0, 1), 0.5), 0.5, 1e-12);
  EXPECT_NEAR(distance_to_set(make_interval(-1, 1), Complex(0, 2)), 2.0, 1e-12);
}

TEST(SetGeom, JuliaEscape) {
  const IntPolynomial p{-1, 0, 1};
  const double R = julia_escape_radius(p);
  EXPECT_GE(R, 1.62);
  EXPECT_FALSE(julia_escape_time(p, 0.0, R, 1000).has_value());
  EXPECT_TRUE(julia_escape_time(p, 2.0, R, 1000).has_value());
}

TEST(SetGeom, PrimitivesAndDescribe) {
  const auto u = make_union({make_disk(0, 1), make_union({make_interval(2, 3), make_circle(5, 1)})});
  EXPECT_EQ(primitives(u).size(), 3u);
  EXPECT_FALSE(is_closed_form(u));
  EXPECT_TRUE(is_closed_form(make_interval(0, 1)));
  EXPECT_EQ(describe(make_disk(0, 0.2)), "disk 0 0 0.2");
}
