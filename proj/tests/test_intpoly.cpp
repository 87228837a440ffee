#include <gtest/gtest.h>

#include <random>

#include "capheight/error.hpp"
#include "capheight/intpoly.hpp"
#include "oracles.hpp"

using namespace capheight;

TEST(IntPolynomial, NormalizesAndFormats) {
  IntPolynomial p{-1, -1, 1, 0, 0};
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.to_string(), "-1 -1 1");
  EXPECT_TRUE((IntPolynomial{0, 0}.is_zero()));
  EXPECT_EQ(IntPolynomial{}.degree(), -1);
  EXPECT_THROW(IntPolynomial{}.leading(), Error);
}

TEST(IntPolynomial, Arithmetic) {
  const IntPolynomial a{-1, 1}, b{1, 1};
  EXPECT_EQ(a * b, (IntPolynomial{-1, 0, 1}));
  EXPECT_EQ(a + b, (IntPolynomial{0, 2}));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((IntPolynomial{0, 0, 1}).derivative(), (IntPolynomial{0, 2}));
  EXPECT_EQ(Integer(3) * a, (IntPolynomial{-3, 3}));
  EXPECT_EQ((IntPolynomial{-1, 0, 1}).evaluate(Integer(5)), Integer(24));
}

TEST(IntPolynomial, ContentAndPrimitivePart) {
  EXPECT_EQ(content(IntPolynomial{6, 6}), Integer(6));
  EXPECT_EQ(primitive_part(IntPolynomial{-6, -6}), (IntPolynomial{1, 1}));
  EXPECT_EQ(content(IntPolynomial{}), Integer(0));
}

TEST(IntPolynomial, DivisionAndGcd) {
  const IntPolynomial p = IntPolynomial{-1, 1} * IntPolynomial{2, 0, 1};
  EXPECT_EQ(divide_exact(p, IntPolynomial{-1, 1}), (IntPolynomial{2, 0, 1}));
  EXPECT_FALSE(try_divide_exact(p, IntPolynomial{1, 1}).has_value());
  EXPECT_THROW(divide_exact(p, IntPolynomial{1, 1}), Error);
  EXPECT_EQ(gcd(p, IntPolynomial{-1, 0, 1}), (IntPolynomial{-1, 1}));
  const auto pd = pseudo_divide(IntPolynomial{1, 0, 3}, IntPolynomial{1, 2});
  // lc(b)^2 a = q b + r
  EXPECT_EQ(Integer(4) * IntPolynomial({1, 0, 3}), pd.quotient * IntPolynomial({1, 2}) + pd.remainder);
}

TEST(Resultant, KnownValues) {
  EXPECT_EQ(resultant(IntPolynomial{-1, 1}, IntPolynomial{1, 1}), Integer(2));
  EXPECT_EQ(resultant(IntPolynomial{1, 0, 1}, IntPolynomial{-2, 0, 1}), Integer(9));
  const IntPolynomial p{3, -2, 0, 5};
  EXPECT_EQ(resultant(p, p), Integer(0));
  EXPECT_THROW(resultant(IntPolynomial{}, p), Error);
}

TEST(Resultant, MatchesSylvesterOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 0, 7, 30);
    const IntPolynomial q = oracle::random_poly(rng, 0, 7, 30);
    const Integer expected = oracle::sylvester_resultant(p, q);
    EXPECT_EQ(resultant(p, q), expected) << p.to_string() << " | " << q.to_string();
    EXPECT_EQ(resultant_sylvester(p, q), expected);
  }
}

TEST(Resultant, BigCoefficients) {
  const IntPolynomial p = IntPolynomial::monomial(1, 20) - IntPolynomial::constant(Integer(1) << 80);
  const IntPolynomial q = chebyshev_T(9);
  EXPECT_EQ(resultant(p, q), oracle::sylvester_resultant(p, q));
}

TEST(Discriminant, KnownValues) {
  EXPECT_EQ(discriminant(IntPolynomial{-1, -1, 1}), Integer(5));
  EXPECT_EQ(discriminant(IntPolynomial{1, -2, 1}), Integer(0));
  EXPECT_EQ(discriminant(IntPolynomial{0, -1, 0, 1}), Integer(4));
  // b^2 - 4ac
  EXPECT_EQ(discriminant(IntPolynomial{7, 3, 2}), Integer(9 - 56));
}

TEST(Discriminant, MatchesProductFormula) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const IntPolynomial p = oracle::random_poly(rng, 2, 5, 9);
    if (!is_squarefree(p)) continue;
    const long double expected = oracle::discriminant_product(p);
    const long double got = static_cast<long double>(discriminant(p));
    EXPECT_NEAR(static_cast<double>(got), static_cast<double>(expected), 1e-6 * std::max(1.0L, std::abs(expected))) << p.to_string();
  }
}

TEST(Squarefree, DecompositionReassembles) {
  const IntPolynomial a{-1, 1}, b{1, 0, 1}, c{2, 1};
  const IntPolynomial p = Integer(3) * a * a * a * b * b * c;
  EXPECT_FALSE(is_squarefree(p));
  IntPolynomial prod = IntPolynomial::constant(1);
  for (const auto& [f, m] : squarefree_decomposition(p)) {
    EXPECT_TRUE(is_squarefree(f));
    for (int i = 0; i < m; ++i) prod = prod * f;
  }
  const IntPolynomial pp = primitive_part(p);
  EXPECT_TRUE(prod == pp || prod == -pp);
}

TEST(RealRoots, SturmCount) {
  EXPECT_EQ(real_root_count(chebyshev_T(9)), 9);
  EXPECT_EQ(real_root_count(IntPolynomial{1, 0, 1}), 0);
  EXPECT_EQ(real_root_count(IntPolynomial{0, -1, 0, 1}), 3);
  EXPECT_EQ(real_root_count(IntPolynomial{1, -2, 1}), 1);  // distinct roots only
}

TEST(Irreducibility, KnownValues) {
  EXPECT_TRUE(is_squarefree(IntPolynomial{-2, 0, 1}));
  EXPECT_EQ(irreducibility_certificate(IntPolynomial{-2, 0, 1}), Irreducibility::Proven);
  EXPECT_TRUE(oracle::irreducible_mod_p_bruteforce(IntPolynomial{-2, 0, 1}, 3));
  EXPECT_TRUE(is_squarefree(IntPolynomial{-1, 0, 1}));
  EXPECT_NE(irreducibility_certificate(IntPolynomial{-1, 0, 1}), Irreducibility::Proven);
}

TEST(Irreducibility, NeverFalselyProven) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const IntPolynomial a = oracle::random_poly(rng, 1, 3, 6);
    const IntPolynomial b = oracle::random_poly(rng, 1, 3, 6);
    EXPECT_NE(irreducibility_certificate(a * b), Irreducibility::Proven) << (a * b).to_string();
  }
}

TEST(Irreducibility, ProvenAgreesWithBruteForceModP) {
  std::mt19937_64 rng(17);
  int proven = 0;
  for (int t = 0; t < 200; ++t) {
    const IntPolynomial p = primitive_part(oracle::random_poly(rng, 2, 5, 10));
    const bool brute = oracle::irreducible_mod_p_bruteforce(p, 2) || oracle::irreducible_mod_p_bruteforce(p, 3) ||
                       oracle::irreducible_mod_p_bruteforce(p, 5) || oracle::irreducible_mod_p_bruteforce(p, 7);
    // a witness among small primes not dividing the lead is a valid certificate
    const Integer lead = p.leading();
    bool witness = false;
    for (int q : {2, 3, 5, 7})
      if (lead % q != 0 && oracle::irreducible_mod_p_bruteforce(p, q)) witness = true;
    if (witness) {
      EXPECT_EQ(irreducibility_certificate(p), Irreducibility::Proven) << p.to_string();
      ++proven;
    }
    if (irreducibility_certificate(p, 7) == Irreducibility::Proven) EXPECT_TRUE(brute);
  }
  EXPECT_GT(proven, 20);
}

TEST(Irreducibility, DecideSmallDegree) {
  // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2), reducible though no rational root
  EXPECT_EQ(decide_irreducible(IntPolynomial{4, 0, 0, 0, 1}), std::optional<bool>(false));
  // x^4 + 1 is reducible mod every prime but irreducible over Z
  EXPECT_EQ(irreducibility_certificate(IntPolynomial{1, 0, 0, 0, 1}), Irreducibility::Unknown);
  EXPECT_EQ(decide_irreducible(IntPolynomial{1, 0, 0, 0, 1}), std::optional<bool>(true));
  EXPECT_EQ(decide_irreducible(IntPolynomial{2, 2}), std::optional<bool>(false));  // not primitive
  EXPECT_FALSE(small_degree_factor(IntPolynomial{-2, 0, 1}).has_value());
}

TEST(Families, ChebyshevAndCyclotomic) {
  EXPECT_EQ(chebyshev_T(4), (IntPolynomial{1, 0, -8, 0, 8}));
  EXPECT_EQ(chebyshev_T(0), (IntPolynomial{1}));
  EXPECT_EQ(cyclotomic(1), (IntPolynomial{-1, 1}));
  EXPECT_EQ(cyclotomic(2), (IntPolynomial{1, 1}));
  EXPECT_EQ(cyclotomic(6), (IntPolynomial{1, -1, 1}));
  // (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1))
  EXPECT_EQ(divide_exact(IntPolynomial{-1, 0, 0, 0, 0, 0, 1}, IntPolynomial{-1, 1} * IntPolynomial{1, 1} * IntPolynomial{1, 1, 1}),
            cyclotomic(6));
  EXPECT_EQ(cyclotomic(12), (IntPolynomial{1, 0, -1, 0, 1}));
  EXPECT_EQ(monic_chebyshev(3), (IntPolynomial{0, -3, 0, 1}));
  for (int m = 1; m <= 60; ++m) {
    // product over d | m gives x^m - 1
    IntPolynomial prod = IntPolynomial::constant(1);
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) prod = prod * cyclotomic(d);
    EXPECT_EQ(prod, IntPolynomial::monomial(1, m) - IntPolynomial::constant(1)) << m;
  }
}

TEST(IntPolynomial, LogAbsAndOrder) {
  EXPECT_NEAR(log_abs(Integer(1) << 2000), 2000 * std::log(2.0), 1e-9);
  EXPECT_TRUE(lexicographic_less(IntPolynomial{5, 1}, IntPolynomial{0, 0, 1}));
  EXPECT_TRUE(lexicographic_less(IntPolynomial{-1, 1}, IntPolynomial{0, 1}));
}
