#pragma once

// Exact univariate polynomials over the integers.
//
// Coefficients are arbitrary-precision (boost::multiprecision::cpp_int) and
// stored in ascending degree order with no trailing zeros, so the zero
// polynomial has an empty coefficient vector and degree() == -1.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "capheight/dd.hpp"

namespace capheight {

using Integer = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> ascending);
  IntPolynomial(std::initializer_list<long long> ascending);

  static IntPolynomial constant(const Integer& c);
  static IntPolynomial monomial(const Integer& c, int degree);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  // Leading coefficient; the zero polynomial has none.
  const Integer& leading() const;
  // Coefficient of x^i, zero beyond the degree.
  Integer coefficient(int i) const;
  std::span<const Integer> coefficients() const noexcept { return coeffs_; }

  IntPolynomial derivative() const;
  IntPolynomial operator-() const;

  Complex evaluate(Complex z) const;
  ComplexDD evaluate(const ComplexDD& z) const;
  Integer evaluate(const Integer& x) const;

  std::vector<double> to_double() const;
  std::vector<DoubleDouble> to_dd() const;

  // "-1 -1 1" style, ascending.
  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
  void normalize();
  std::vector<Integer> coeffs_;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const Integer& c, const IntPolynomial& a);

// Lexicographic order on (degree, coefficients descending); used to make
// scan output deterministic.
bool lexicographic_less(const IntPolynomial& a, const IntPolynomial& b);

DoubleDouble to_dd(const Integer& v);
// log|v| for nonzero v without overflowing a double.
double log_abs(const Integer& v);

// gcd of the coefficients, positive; zero for the zero polynomial.
Integer content(const IntPolynomial& p);
// p / content(p) with positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& p);

struct PseudoDivision {
  IntPolynomial quotient;
  IntPolynomial remainder;
};
// lc(b)^(deg a - deg b + 1) * a = q * b + r with deg r < deg b.
PseudoDivision pseudo_divide(const IntPolynomial& a, const IntPolynomial& b);

// Exact division in Z[x]; throws Undefined if b does not divide a.
IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);
std::optional<IntPolynomial> try_divide_exact(const IntPolynomial& a, const IntPolynomial& b);

// gcd in Z[x], normalized to positive leading coefficient.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

// Res(P, Q) = lc(P)^deg Q * prod Q(alpha) over the roots alpha of P.
// Subresultant PRS; throws UndefinedResultant on a zero argument.
Integer resultant(const IntPolynomial& p, const IntPolynomial& q);
// Determinant of the Sylvester matrix by fraction-free elimination.
Integer resultant_sylvester(const IntPolynomial& p, const IntPolynomial& q);

// (-1)^(n(n-1)/2) Res(P, P') / lc(P); always an integer for P in Z[x].
Integer discriminant(const IntPolynomial& p);

bool is_squarefree(const IntPolynomial& p);

// Squarefree decomposition of the primitive part: pairs (factor, multiplicity)
// with pairwise coprime squarefree factors whose product (with multiplicity)
// is primitive_part(p) up to sign.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p);

// Number of distinct real roots (Sturm sequence, exact).
int real_root_count(const IntPolynomial& p);

enum class Irreducibility { Proven, Unknown };

// Proven iff p is primitive and irreducible modulo some prime <= prime_budget
// that does not divide the leading coefficient. Never a false Proven.
Irreducibility irreducibility_certificate(const IntPolynomial& p, int prime_budget = 100);

// Exhaustive search for a nontrivial factor of a primitive polynomial of
// degree <= 4 (rational roots, then quadratic factors bounded by the Landau
// inequality). Returns nullopt iff p is irreducible over Z.
std::optional<IntPolynomial> small_degree_factor(const IntPolynomial& p);

// True iff p is irreducible over Z, decided by certificate or, at degree <= 4,
// by exhaustive factor search. nullopt when neither applies.
std::optional<bool> decide_irreducible(const IntPolynomial& p, int prime_budget = 100);

// Chebyshev polynomial of the first kind, T_{n+1} = 2x T_n - T_{n-1}.
IntPolynomial chebyshev_T(int n);
// Monic 2 T_n(x/2), integer coefficients; T_0 maps to the constant 2.
IntPolynomial monic_chebyshev(int n);
// m-th cyclotomic polynomial.
IntPolynomial cyclotomic(int m);

}  // namespace capheight
