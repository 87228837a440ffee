#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "capheight/error.hpp"
#include "capheight/heights.hpp"
#include "oracles.hpp"

using namespace capheight;

namespace {
const double kPhi = (1 + std::sqrt(5.0)) / 2;

std::vector<std::string> names(const ScanResult& r) {
  std::vector<std::string> v;
  for (const auto& h : r.hits) v.push_back(h.polynomial.to_string());
  return v;
}
}  // namespace

TEST(WeilHeight, KnownValues) {
  EXPECT_NEAR(weil_height(IntPolynomial{-1, -1, 1}), 0.5 * std::log(kPhi), 1e-12);
  EXPECT_NEAR(weil_height(cyclotomic(12)), 0.0, 1e-12);
  EXPECT_NEAR(weil_height(IntPolynomial{-1, 2}), std::log(2.0), 1e-12);
  EXPECT_THROW(weil_height(IntPolynomial{3}), Error);
}

TEST(Mahler, KnownValues) {
  EXPECT_NEAR(log_mahler(IntPolynomial{-1, -1, 1}), std::log(kPhi), 1e-12);
  EXPECT_NEAR(jensen_log_mahler(IntPolynomial{-1, -1, 1}), std::log(kPhi), 1e-9);
  EXPECT_NEAR(log_mahler(IntPolynomial{0, 1}), 0.0, 1e-15);
  const GreenModel iv = make_green_model(make_interval(-1, 1));
  for (int n : {2, 5, 11}) EXPECT_NEAR(mahler_sigma(chebyshev_T(n), iv), (n - 1) * std::log(2.0), 1e-9) << n;
}

TEST(Mahler, JensenOracleAgreesWithRootSum) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 1, 32, 1000);
    // keep roots off the unit circle so the quadrature converges fast
    bool near_circle = false;
    for (const auto& z : find_roots(p).roots) near_circle = near_circle || std::abs(std::abs(z) - 1.0) < 1e-2;
    if (near_circle) continue;
    EXPECT_NEAR(log_mahler(p), oracle::jensen(p), 1e-6) << p.to_string();
    EXPECT_NEAR(jensen_log_mahler(p), oracle::jensen(p), 1e-6);
  }
}

TEST(HeightSigma, UnitCircleIsWeilHeight) {
  const GreenModel circle = make_green_model(make_circle(0, 1));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 1, 6, 20);
    EXPECT_NEAR(height_sigma(p, circle).h_sigma, weil_height(p), 1e-12);
  }
}

TEST(HeightSigma, KnownValues) {
  const GreenModel wide = make_green_model(make_interval(-2, 2));
  for (int n : {1, 2, 7, 16, 33, 64}) EXPECT_NEAR(height_sigma(monic_chebyshev(n), wide).h_sigma, 0.0, 1e-6) << n;
  const HeightReport r = height_sigma(IntPolynomial{-2, 1}, make_green_model(make_interval(-1, 1)));
  ASSERT_EQ(r.per_root_green.size(), 1u);
  EXPECT_NEAR(r.per_root_green[0], 1.31696, 1e-5);
  EXPECT_NEAR(r.h_sigma, std::log(2.0 + std::sqrt(3.0)), 1e-12);
}

TEST(HeightSigma, IdentityWithMahlerOnIrreducibles) {
  const GreenModel iv = make_green_model(make_interval(-1, 1));
  std::mt19937_64 rng(6);
  int checked = 0;
  while (checked < 25) {
    const IntPolynomial p = oracle::random_poly(rng, 2, 6, 15);
    if (irreducibility_certificate(p) != Irreducibility::Proven) continue;
    ++checked;
    const HeightReport r = height_sigma(p, iv);
    EXPECT_NEAR(r.h_sigma, r.log_mahler_sigma / r.degree, 1e-12);
    EXPECT_NEAR(r.h_sigma, mahler_sigma(p, iv) / p.degree(), 1e-12);
  }
}

TEST(HeightSigma, HatEqualsPlainOnRegularSets) {
  std::mt19937_64 rng(9);
  for (const auto& set : {make_disk(Complex(0.2, 0), 0.9), make_interval(-1, 1)}) {
    const GreenModel model = make_green_model(set);
    for (int t = 0; t < 20; ++t) {
      const IntPolynomial p = oracle::random_poly(rng, 1, 5, 10);
      const HeightReport r = height_sigma(p, model, true);
      EXPECT_NEAR(r.h_hat_sigma, r.h_sigma, 1e-9) << p.to_string();
    }
  }
}

TEST(HeightSigma, HatDropsEnclosedRootsForCircle) {
  // root 0 sits in the bounded component of the circle's complement
  const HeightReport r = height_sigma(IntPolynomial{0, 2}, make_green_model(make_circle(0, 1)), true);
  EXPECT_FALSE(r.root_in_outer_domain[0]);
  EXPECT_NEAR(r.h_sigma, std::log(2.0), 1e-12);
}

TEST(HeightSigma, WeilComparisonBoundedByC) {
  const GreenModel iv = make_green_model(make_interval(-1, 1));
  const double C = height_comparison_constant(iv);
  EXPECT_GT(C, 0.0);
  ScanOptions opt;
  opt.prune = false;
  const ScanResult r = northcott_scan(iv, 2, 6, 2.0, opt);
  ASSERT_FALSE(r.hits.empty());
  for (const auto& h : r.hits) EXPECT_LE(std::abs(h.weil_height - h.h_sigma), C + 1e-9) << h.polynomial.to_string();
}

TEST(Multiplicativity, KnownValues) {
  const GreenModel circle = make_green_model(make_circle(0, 1));
  EXPECT_LE(mahler_multiplicativity_check({IntPolynomial{-1, 1}, IntPolynomial{1, 1}}, circle), 1e-9);
  EXPECT_LE(mahler_multiplicativity_check({chebyshev_T(3), chebyshev_T(4)}, make_green_model(make_interval(-1, 1))), 1e-6);
  const GreenModel disk = make_green_model(make_disk(0, 1));
  EXPECT_LE(mahler_multiplicativity_check({IntPolynomial{-2, 1}, IntPolynomial{-3, 1}}, disk), 1e-9);
  EXPECT_NEAR(mahler_sigma(IntPolynomial{-2, 1} * IntPolynomial{-3, 1}, disk), std::log(6.0), 1e-12);
  EXPECT_THROW(mahler_multiplicativity_check({IntPolynomial{-2, 1}}, disk), Error);
}

TEST(Scan, IntervalContainsX) {
  const ScanResult r = northcott_scan(make_green_model(make_interval(-1, 1)), 2, 10, 0.05);
  const auto v = names(r);
  EXPECT_NE(std::find(v.begin(), v.end(), "0 1"), v.end());
  for (const auto& h : r.hits) EXPECT_LE(h.h_sigma, 0.05 + 1e-9);
}

TEST(Scan, CircleThresholdZeroIsKronecker) {
  const ScanResult r = northcott_scan(make_green_model(make_circle(0, 1)), 2, 5, 0.0);
  std::set<std::string> got;
  for (const auto& h : r.hits) got.insert(h.polynomial.to_string());
  // irreducible factors of cyclotomic polynomials of degree <= 2, plus x
  std::set<std::string> want = {"0 1"};
  for (int m = 1; m <= 12; ++m)
    if (cyclotomic(m).degree() <= 2) want.insert(cyclotomic(m).to_string());
  EXPECT_EQ(got, want);
}

TEST(Scan, StableAcrossCoefficientBounds) {
  const GreenModel iv = make_green_model(make_interval(-1, 1));
  const double t = 0.5 * std::log(2.0) - 0.05;
  EXPECT_EQ(names(northcott_scan(iv, 3, 50, t)), names(northcott_scan(iv, 3, 100, t)));
}

TEST(Scan, PruningDoesNotChangeResults) {
  const GreenModel iv = make_green_model(make_interval(-1, 1));
  ScanOptions full;
  full.prune = false;
  for (double t : {0.0, 0.3, 0.6}) {
    const ScanResult a = northcott_scan(iv, 3, 4, t);
    const ScanResult b = northcott_scan(iv, 3, 4, t, full);
    EXPECT_EQ(names(a), names(b)) << t;
    EXPECT_LE(a.diagnostics.enumerated, b.diagnostics.enumerated);
  }
}

TEST(Scan, ThreadsDoNotChangeResults) {
  const GreenModel iv = make_green_model(make_interval(-2, 2));
  ScanOptions four;
  four.threads = 4;
  EXPECT_EQ(names(northcott_scan(iv, 3, 6, 0.4)), names(northcott_scan(iv, 3, 6, 0.4, four)));
}

TEST(Scan, SortedByHeight) {
  const ScanResult r = northcott_scan(make_green_model(make_disk(0, 1)), 2, 4, 1.0);
  for (std::size_t i = 1; i < r.hits.size(); ++i) EXPECT_LE(r.hits[i - 1].h_sigma, r.hits[i].h_sigma + 1e-10);
  for (const auto& h : r.hits) {
    EXPECT_GT(h.polynomial.leading(), 0);
    EXPECT_EQ(content(h.polynomial), Integer(1));
  }
}

TEST(Scan, ReflectionInvariantOnSymmetricInterval) {
  // P(x) -> +-P(-x) maps hits to hits on [-1, 1]
  const ScanResult r = northcott_scan(make_green_model(make_interval(-1, 1)), 3, 5, 0.6);
  std::set<std::string> got;
  for (const auto& h : r.hits) got.insert(h.polynomial.to_string());
  for (const auto& h : r.hits) {
    std::vector<Integer> c(h.polynomial.coefficients().begin(), h.polynomial.coefficients().end());
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    IntPolynomial q(std::move(c));
    if (q.leading() < 0) q = -q;
    EXPECT_TRUE(got.count(q.to_string())) << h.polynomial.to_string();
  }
}

TEST(GrowthScan, KnownValues) {
  std::vector<IntPolynomial> t;
  for (int n = 2; n <= 20; ++n) t.push_back(chebyshev_T(n));
  const GrowthTable g = leading_growth_scan(t, make_green_model(make_interval(-1, 1)));
  for (const auto& row : g.rows) {
    EXPECT_NEAR(row.lead_root, std::pow(2.0, (row.degree - 1.0) / row.degree), 1e-12);
    EXPECT_GE(row.lead_root, std::numbers::sqrt2 - 1e-12);
  }
  std::vector<IntPolynomial> cyc;
  for (int m = 1; m <= 30; ++m) cyc.push_back(cyclotomic(m));
  for (const auto& row : leading_growth_scan(cyc, make_green_model(make_circle(0, 1))).rows)
    EXPECT_NEAR(row.log_mahler_per_degree, 0.0, 1e-12);
  std::vector<IntPolynomial> xn;
  for (int n = 1; n <= 12; ++n) xn.push_back(IntPolynomial::monomial(1, n) - IntPolynomial::constant(1));
  for (const auto& row : leading_growth_scan(xn, make_green_model(make_disk(0, 0.5))).rows)
    EXPECT_NEAR(row.log_mahler_per_degree, std::log(2.0), 1e-12);
}
