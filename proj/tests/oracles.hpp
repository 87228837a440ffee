#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's algorithms for the quantity being checked.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "capheight/intpoly.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using cplx = std::complex<long double>;

inline std::vector<cpp_int> coeffs(const capheight::IntPolynomial& p) {
  return {p.coefficients().begin(), p.coefficients().end()};
}

// Sylvester matrix determinant by Gaussian elimination over Q.
inline cpp_int sylvester_resultant(const capheight::IntPolynomial& p, const capheight::IntPolynomial& q) {
  const auto a = coeffs(p), b = coeffs(q);
  const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  const int N = m + n;
  if (N == 0) return 1;
  std::vector<std::vector<cpp_rational>> M(N, std::vector<cpp_rational>(N, 0));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + k] = cpp_rational(a[m - k]);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[n + r][r + k] = cpp_rational(b[n - k]);
  cpp_rational det = 1;
  for (int c = 0; c < N; ++c) {
    int piv = -1;
    for (int r = c; r < N; ++r)
      if (M[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (int r = c + 1; r < N; ++r) {
      if (M[r][c] == 0) continue;
      const cpp_rational f = M[r][c] / M[c][c];
      for (int k = c; k < N; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return boost::multiprecision::numerator(det);
}

// Polynomials mod p as ascending vectors.
using ModPoly = std::vector<std::int64_t>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly mod_remainder(ModPoly a, const ModPoly& b, std::int64_t p) {
  // b monic
  trim(a);
  while (a.size() >= b.size()) {
    const std::int64_t c = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

// Irreducible mod p by trying every monic divisor of degree 1..n/2.
inline bool irreducible_mod_p_bruteforce(const capheight::IntPolynomial& poly, std::int64_t p) {
  ModPoly f;
  for (const auto& c : poly.coefficients()) f.push_back(static_cast<std::int64_t>(((c % p) + p) % p));
  trim(f);
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 1) return false;
  // make monic
  std::int64_t inv = 1;
  for (std::int64_t e = p - 2, b = f.back(); e > 0; e >>= 1, b = b * b % p)
    if (e & 1) inv = inv * b % p;
  for (auto& c : f) c = c * inv % p;
  for (int d = 1; d <= n / 2; ++d) {
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (std::int64_t idx = 0; idx < total; ++idx) {
      ModPoly g(static_cast<std::size_t>(d) + 1, 0);
      std::int64_t t = idx;
      for (int i = 0; i < d; ++i, t /= p) g[static_cast<std::size_t>(i)] = t % p;
      g[static_cast<std::size_t>(d)] = 1;
      if (mod_remainder(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Durand-Kerner in long double; enough for small, well separated test cases.
inline std::vector<cplx> roots_dk(const capheight::IntPolynomial& poly) {
  std::vector<long double> a;
  for (const auto& c : poly.coefficients()) a.push_back(static_cast<long double>(c));
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<cplx> z(static_cast<std::size_t>(n));
  const long double lead = a.back();
  long double R = 0;
  for (int i = 0; i < n; ++i) R = std::max(R, std::abs(a[static_cast<std::size_t>(i)] / lead));
  R += 1;
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(R, 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L);
  auto eval = [&](cplx x) {
    cplx s = 0;
    for (int i = n; i >= 0; --i) s = s * x + a[static_cast<std::size_t>(i)];
    return s;
  };
  for (int it = 0; it < 5000; ++it) {
    long double move = 0;
    for (int k = 0; k < n; ++k) {
      cplx den = lead;
      for (int j = 0; j < n; ++j)
        if (j != k) den *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
      const cplx step = eval(z[static_cast<std::size_t>(k)]) / den;
      z[static_cast<std::size_t>(k)] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-17L) break;
  }
  return z;
}

// lc^{2n-2} prod_{i<j} (a_i - a_j)^2, real part rounded.
inline long double discriminant_product(const capheight::IntPolynomial& poly) {
  const auto z = roots_dk(poly);
  const long double lead = static_cast<long double>(poly.leading());
  const int n = static_cast<int>(z.size());
  cplx prod = std::pow(lead, 2 * n - 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) prod *= (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) * (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
  return prod.real();
}

// (1/N) sum log|P(e^{it})| on an offset grid.
inline double jensen(const capheight::IntPolynomial& poly, int N = 1 << 14) {
  std::vector<long double> a;
  for (const auto& c : poly.coefficients()) a.push_back(static_cast<long double>(c));
  long double s = 0;
  for (int k = 0; k < N; ++k) {
    const cplx x = std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * (k + 0.5L) / N);
    cplx v = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
    s += std::log(std::abs(v));
  }
  return static_cast<double>(s / N);
}

// Integral of f against the arcsine (equilibrium) measure of [a, b],
// Gauss-Chebyshev with N nodes.
template <class F>
double arcsine_integral(F f, double a, double b, int N = 4000) {
  long double s = 0;
  for (int k = 1; k <= N; ++k) {
    const double t = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * N));
    s += f(0.5 * (a + b) + 0.5 * (b - a) * t);
  }
  return static_cast<double>(s / N);
}

// Potential of the normalized uniform measure on |z - c| = r.
inline double circle_potential(std::complex<double> z, std::complex<double> c, double r) {
  return -std::log(std::max(std::abs(z - c), r));
}

// Off-diagonal pair average of log 1/|x_i - x_j| by direct double loop.
inline double pair_energy(const std::vector<std::complex<double>>& x) {
  long double s = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s -= std::log(static_cast<long double>(std::abs(x[i] - x[j])));
  return static_cast<double>(s / (static_cast<long double>(n) * (n - 1)));
}

// Best product over all triples of candidates, reported as the normalized
// Vandermonde mean.
inline double best_triple(const std::vector<std::complex<double>>& c) {
  double best = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      for (std::size_t k = j + 1; k < c.size(); ++k)
        best = std::max(best, std::abs(c[i] - c[j]) * std::abs(c[i] - c[k]) * std::abs(c[j] - c[k]));
  return std::cbrt(best);
}

inline capheight::IntPolynomial random_poly(std::mt19937_64& rng, int dmin, int dmax, int bound) {
  std::uniform_int_distribution<int> deg(dmin, dmax), co(-bound, bound);
  const int d = deg(rng);
  std::vector<cpp_int> c(static_cast<std::size_t>(d) + 1);
  for (auto& x : c) x = co(rng);
  while (c.back() == 0) c.back() = co(rng);
  return capheight::IntPolynomial(std::move(c));
}

}  // namespace oracle
