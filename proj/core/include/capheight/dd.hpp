#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 106 bits of significand. Built on error-free transformations
// (two-sum, fma-based two-product).

#include <cmath>
#include <complex>

namespace capheight {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit constexpr operator double() const { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble quick_two_sum(double a, double b) {
  double s = a + b;
  double e = b - (s - a);
  return {s, e};
}

inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

inline DoubleDouble two_prod(double a, double b) {
  double p = a * b;
  double e = std::fma(a, b, -p);
  return {p, e};
}

}  // namespace dd_detail

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
  double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * DoubleDouble(q1);
  double q2 = r.hi / b.hi;
  r = r - b * DoubleDouble(q2);
  double q3 = r.hi / b.hi;
  DoubleDouble q = dd_detail::quick_two_sum(q1, q2);
  return q + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, DoubleDouble b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, DoubleDouble b) { return a = a * b; }
inline DoubleDouble& operator/=(DoubleDouble& a, DoubleDouble b) { return a = a / b; }

inline bool operator<(DoubleDouble a, DoubleDouble b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(DoubleDouble a, DoubleDouble b) { return b < a; }
inline bool operator==(DoubleDouble a, DoubleDouble b) { return a.hi == b.hi && a.lo == b.lo; }

inline DoubleDouble abs(DoubleDouble a) { return a.hi < 0.0 ? -a : a; }

DoubleDouble sqrt(DoubleDouble a);

// Complex number over double-double components.
struct ComplexDD {
  DoubleDouble re;
  DoubleDouble im;

  constexpr ComplexDD() = default;
  constexpr ComplexDD(DoubleDouble r) : re(r), im() {}  // NOLINT(google-explicit-constructor)
  constexpr ComplexDD(double r) : re(r), im() {}        // NOLINT(google-explicit-constructor)
  constexpr ComplexDD(DoubleDouble r, DoubleDouble i) : re(r), im(i) {}
  ComplexDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT(google-explicit-constructor)

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline ComplexDD operator-(ComplexDD a) { return {-a.re, -a.im}; }
inline ComplexDD operator+(ComplexDD a, ComplexDD b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexDD operator-(ComplexDD a, ComplexDD b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexDD operator*(ComplexDD a, ComplexDD b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexDD operator/(ComplexDD a, ComplexDD b);

inline ComplexDD& operator+=(ComplexDD& a, ComplexDD b) { return a = a + b; }
inline ComplexDD& operator-=(ComplexDD& a, ComplexDD b) { return a = a - b; }
inline ComplexDD& operator*=(ComplexDD& a, ComplexDD b) { return a = a * b; }

inline ComplexDD conj(ComplexDD a) { return {a.re, -a.im}; }

// Modulus rounded to double; enough for convergence tests and step control.
inline double magnitude(ComplexDD a) {
  return std::hypot(static_cast<double>(a.re), static_cast<double>(a.im));
}
inline double magnitude(std::complex<double> a) { return std::abs(a); }

}  // namespace capheight
