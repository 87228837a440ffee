#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "capheight/roots.hpp"
#include "oracles.hpp"

using namespace capheight;

namespace {

bool contains(const std::vector<Complex>& v, Complex z, double tol) {
  return std::any_of(v.begin(), v.end(), [&](Complex w) { return std::abs(w - z) <= tol; });
}

}  // namespace

TEST(FindRoots, KnownValues) {
  const RootSet i = find_roots(IntPolynomial{1, 0, 1});
  ASSERT_EQ(i.size(), 2u);
  EXPECT_TRUE(contains(i.roots, {0, 1}, 1e-12));
  EXPECT_TRUE(contains(i.roots, {0, -1}, 1e-12));
  EXPECT_LE(i.residual_bound, 1e-12);

  const double phi = (1 + std::sqrt(5.0)) / 2;
  const RootSet g = find_roots(IntPolynomial{-1, -1, 1});
  EXPECT_TRUE(contains(g.roots, phi, 1e-10));
  EXPECT_TRUE(contains(g.roots, 1 - phi, 1e-10));

  const RootSet t8 = find_roots(chebyshev_T(8));
  ASSERT_EQ(t8.size(), 8u);
  for (int k = 1; k <= 8; ++k) EXPECT_TRUE(contains(t8.roots, std::cos((2 * k - 1) * std::numbers::pi / 16), 1e-9));
}

TEST(FindRoots, RealRootsAreExactlyReal) {
  const RootSet r = find_roots(chebyshev_T(12));
  for (const auto& z : r.roots) EXPECT_EQ(z.imag(), 0.0);
}

TEST(FindRoots, ConjugatePairsAreExact) {
  const RootSet r = find_roots(cyclotomic(35));
  for (const auto& z : r.roots) EXPECT_TRUE(contains(r.roots, std::conj(z), 0.0));
}

TEST(FindRoots, Multiplicities) {
  const IntPolynomial a{-1, 1}, b{1, 0, 1};
  const RootSet r = find_roots(a * a * a * b * IntPolynomial{0, 1} * IntPolynomial{0, 1});
  EXPECT_EQ(r.size(), 7u);
  EXPECT_EQ(r.max_multiplicity, 3);
  EXPECT_EQ(std::count(r.roots.begin(), r.roots.end(), Complex(1, 0)), 3);
  EXPECT_EQ(std::count(r.roots.begin(), r.roots.end(), Complex(0, 0)), 2);
}

TEST(FindRoots, Chebyshev64BackwardResidual) {
  const RootSet r = find_roots(chebyshev_T(64));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.residual_bound, 1e-8);
  for (int k = 1; k <= 64; ++k) EXPECT_TRUE(contains(r.roots, std::cos((2 * k - 1) * std::numbers::pi / 128), 1e-9));
}

TEST(FindRoots, AgreesWithDurandKernerOracle) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 1, 8, 50);
    if (!is_squarefree(p) || p.coefficient(0) == 0) continue;
    const RootSet r = find_roots(p);
    const auto ref = oracle::roots_dk(p);
    ASSERT_EQ(r.size(), ref.size());
    for (const auto& z : ref) EXPECT_TRUE(contains(r.roots, Complex(static_cast<double>(z.real()), static_cast<double>(z.imag())), 1e-7)) << p.to_string();
    EXPECT_LE(r.residual_bound, 1e-12);
  }
}

TEST(FindRoots, ResidualScaleUpToDegree64) {
  std::mt19937_64 rng(21);
  for (int d : {16, 32, 48, 64}) {
    std::vector<Integer> c(static_cast<std::size_t>(d) + 1);
    std::uniform_int_distribution<int> co(-1000, 1000);
    for (auto& x : c) x = co(rng);
    c.back() = 1 + std::abs(co(rng));
    const RootSet r = find_roots(IntPolynomial(c));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.residual_bound, 1e-8) << d;
  }
}

TEST(FindRoots, ConstantsAndZero) {
  EXPECT_THROW(find_roots(IntPolynomial{5}), std::exception);
  EXPECT_THROW(find_roots(IntPolynomial{}), std::exception);
}

TEST(ComplexRoots, DoublePrecisionSolver) {
  const std::vector<Complex> c = {Complex(-1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};  // z^3 - 1
  bool ok = false;
  const auto r = complex_roots(c, {}, &ok);
  EXPECT_TRUE(ok);
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(contains(r, std::polar(1.0, 2 * std::numbers::pi * k / 3), 1e-12));
}
