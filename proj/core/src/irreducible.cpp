// Irreducibility over Z: mod-p certificates (Rabin's test over F_p) and an
// exhaustive small-degree factor search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "capheight/error.hpp"
#include "capheight/intpoly.hpp"

namespace capheight {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // ascending, trimmed

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// p < 2^32, so the product fits
u64 mulmod(u64 a, u64 b, u64 p) { return (a % p) * (b % p) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

ModPoly reduce(const IntPolynomial& f, u64 p) {
  ModPoly out;
  for (const auto& c : f.coefficients()) {
    Integer r = c % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    out.push_back(r.convert_to<u64>());
  }
  trim(out);
  return out;
}

ModPoly mod(ModPoly a, const ModPoly& m, u64 p) {
  const std::size_t dm = m.size() - 1;
  const u64 inv = invmod(m.back(), p);
  trim(a);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const u64 factor = mulmod(a.back(), inv, p);
    for (std::size_t j = 0; j <= dm; ++j) {
      u64 sub = mulmod(factor, m[j], p);
      a[shift + j] = (a[shift + j] + p - sub) % p;
    }
    trim(a);
  }
  return a;
}

ModPoly mulmod_poly(const ModPoly& a, const ModPoly& b, const ModPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return mod(std::move(out), m, p);
}

ModPoly powmod_poly(ModPoly base, u64 e, const ModPoly& m, u64 p) {
  ModPoly r{1};
  base = mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mulmod_poly(r, base, m, p);
    base = mulmod_poly(base, base, m, p);
    e >>= 1;
  }
  return r;
}

ModPoly gcd_mod(ModPoly a, ModPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

ModPoly sub(ModPoly a, const ModPoly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin: f of degree n (p not dividing lc) is irreducible over F_p iff
// x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for each prime q | n.
bool irreducible_mod_p(const ModPoly& f, u64 p) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  const ModPoly x{0, 1};
  std::vector<ModPoly> frob(static_cast<std::size_t>(n) + 1);  // frob[k] = x^(p^k) mod f
  frob[0] = mod(x, f, p);
  for (int k = 1; k <= n; ++k) frob[static_cast<std::size_t>(k)] = powmod_poly(frob[static_cast<std::size_t>(k) - 1], p, f, p);
  if (!sub(frob[static_cast<std::size_t>(n)], frob[0], p).empty()) return false;
  for (int q : prime_factors(n)) {
    ModPoly diff = sub(frob[static_cast<std::size_t>(n / q)], frob[0], p);
    ModPoly g = gcd_mod(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<int> primes_up_to(int n) {
  std::vector<int> out;
  std::vector<bool> sieve(static_cast<std::size_t>(std::max(n, 1)) + 1, true);
  for (int i = 2; i <= n; ++i) {
    if (!sieve[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long long j = static_cast<long long>(i) * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
  }
  return out;
}

std::vector<Integer> signed_divisors(const Integer& v) {
  Integer a = v < 0 ? Integer(-v) : v;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(-out[i]);
  return out;
}

bool divides(const IntPolynomial& f, const IntPolynomial& p) { return try_divide_exact(p, f).has_value(); }

}  // namespace

Irreducibility irreducibility_certificate(const IntPolynomial& p, int prime_budget) {
  if (p.degree() < 1) return Irreducibility::Unknown;
  if (content(p) != 1) return Irreducibility::Unknown;
  if (p.degree() == 1) return Irreducibility::Proven;
  for (int prime : primes_up_to(prime_budget)) {
    if (p.leading() % prime == 0) continue;
    ModPoly f = reduce(p, static_cast<u64>(prime));
    if (irreducible_mod_p(f, static_cast<u64>(prime))) return Irreducibility::Proven;
  }
  return Irreducibility::Unknown;
}

std::optional<IntPolynomial> small_degree_factor(const IntPolynomial& p) {
  const int n = p.degree();
  if (n < 2) return std::nullopt;
  if (n > 4) throw Error(ErrorKind::Undefined, "small_degree_factor handles degree <= 4");
  if (content(p) != 1) return IntPolynomial::constant(content(p));

  const Integer a0 = p.coefficient(0);
  const Integer an = p.leading();
  if (a0 == 0) return IntPolynomial{0, 1};

  // Linear factors b x - a with a | a0, b | an (rational root test).
  std::vector<Integer> lead_divs;
  for (const auto& d : signed_divisors(an))
    if (d > 0) lead_divs.push_back(d);
  const std::vector<Integer> const_divs = signed_divisors(a0);
  for (const auto& b : lead_divs) {
    for (const auto& a : const_divs) {
      IntPolynomial f(std::vector<Integer>{Integer(-a), b});
      if (divides(f, p)) return f;
    }
  }
  if (n < 4) return std::nullopt;

  // Quadratic factors c x^2 + b x + a; |b| <= 2 M(g) <= 2 M(p) <= 2 ||p||_2.
  double norm2 = 0.0;
  for (const auto& c : p.coefficients()) {
    double v = c.convert_to<double>();
    norm2 += v * v;
  }
  const long long bmax = static_cast<long long>(std::ceil(2.0 * std::sqrt(norm2))) + 1;
  for (const auto& c : lead_divs) {
    for (const auto& a : const_divs) {
      for (long long b = -bmax; b <= bmax; ++b) {
        IntPolynomial f(std::vector<Integer>{a, Integer(b), c});
        if (divides(f, p)) return f;
      }
    }
  }
  return std::nullopt;
}

std::optional<bool> decide_irreducible(const IntPolynomial& p, int prime_budget) {
  if (p.degree() < 1) return false;
  if (content(p) != 1) return false;
  if (irreducibility_certificate(p, prime_budget) == Irreducibility::Proven) return true;
  if (p.degree() <= 4) return !small_degree_factor(p).has_value();
  return std::nullopt;
}

}  // namespace capheight
