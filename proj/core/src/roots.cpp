#include "capheight/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "capheight/error.hpp"

namespace capheight {

namespace {

// Upper convex hull of (i, log|a_i|) gives the moduli of the roots up to a
// factor; place deg-edge roots on each hull radius.
template <class T>
std::vector<T> polygon_guesses(const std::vector<double>& log_abs_coeff) {
  const int n = static_cast<int>(log_abs_coeff.size()) - 1;
  std::vector<int> hull;
  for (int i = 0; i <= n; ++i) {
    if (!std::isfinite(log_abs_coeff[static_cast<std::size_t>(i)])) continue;
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull.back();
      const double ya = log_abs_coeff[static_cast<std::size_t>(a)];
      const double yb = log_abs_coeff[static_cast<std::size_t>(b)];
      const double yi = log_abs_coeff[static_cast<std::size_t>(i)];
      // drop b if it lies on or below segment a-i
      if ((yb - ya) * (i - a) <= (yi - ya) * (b - a)) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n));
  // zero low coefficients mean roots at the origin; start them near it
  for (int t = 0; !hull.empty() && t < hull.front(); ++t) {
    const double ang = 2.0 * std::numbers::pi * t / hull.front() + 0.7;
    out.emplace_back(Complex(1e-6 * std::cos(ang), 1e-6 * std::sin(ang)));
  }
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int i = hull[e];
    const int j = hull[e + 1];
    const int k = j - i;
    const double logr = (log_abs_coeff[static_cast<std::size_t>(i)] - log_abs_coeff[static_cast<std::size_t>(j)]) / k;
    const double r = std::exp(logr);
    for (int t = 0; t < k; ++t) {
      const double ang = 2.0 * std::numbers::pi * t / k + 2.0 * std::numbers::pi * i / n + 0.7;
      out.emplace_back(Complex(r * std::cos(ang), r * std::sin(ang)));
    }
  }
  return out;
}

template <class T>
struct NewtonStep {
  T ratio;
  double backward;  // |P(z)| / sum |a_i| |z|^i
};

// P(z)/P'(z); for |z| > 1 the reversed polynomial is evaluated at 1/z so
// large roots do not overflow.
template <class T>
NewtonStep<T> newton_ratio(const std::vector<T>& a, const T& z) {
  const int n = static_cast<int>(a.size()) - 1;
  const double mod = magnitude(z);
  double scale = 0.0;
  if (mod <= 1.0) {
    T p = a[static_cast<std::size_t>(n)];
    T dp(0.0);
    for (int i = n; i >= 0; --i) {
      if (i < n) {
        dp = dp * z + p;
        p = p * z + a[static_cast<std::size_t>(i)];
      }
      scale = scale * mod + magnitude(a[static_cast<std::size_t>(i)]);
    }
    return {p / dp, magnitude(p) / scale};
  }
  const T y = T(1.0) / z;
  const double ym = 1.0 / mod;
  T r = a[0];
  T dr(0.0);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) {
      dr = dr * y + r;
      r = r * y + a[static_cast<std::size_t>(i)];
    }
    scale = scale * ym + magnitude(a[static_cast<std::size_t>(i)]);
  }
  return {z * r / (T(static_cast<double>(n)) * r - y * dr), magnitude(r) / scale};
}

// Gauss-Seidel Aberth-Ehrlich. A root is done once its correction is below
// eps relative, or once its backward error is at the rounding level `unit`
// and the corrections stopped shrinking (ill-conditioned roots).
template <class T>
int aberth(const std::vector<T>& a, std::vector<T>& z, double eps, double unit, int max_iter) {
  const std::size_t n = z.size();
  const double floor = 8.0 * unit * static_cast<double>(n + 1);
  std::vector<bool> done(n, false);
  std::vector<double> last(n, HUGE_VAL);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const NewtonStep<T> ns = newton_ratio(a, z[i]);
      if (ns.backward == 0.0) {
        done[i] = true;
        continue;
      }
      T s(0.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += T(1.0) / (z[i] - z[j]);
      const T w = ns.ratio / (T(1.0) - ns.ratio * s);
      z[i] -= w;
      const double step = magnitude(w);
      const double scale = std::max(magnitude(z[i]), 1e-300);
      if (step <= eps * scale || (ns.backward <= floor && step >= 0.5 * last[i])) done[i] = true;
      else all = false;
      last[i] = step;
    }
    if (all) return iter + 1;
  }
  return -iter;
}

std::vector<double> log_abs_coefficients(const IntPolynomial& p) {
  std::vector<double> out;
  for (const auto& c : p.coefficients()) out.push_back(c == 0 ? -HUGE_VAL : log_abs(c));
  return out;
}

// Force exactly `real_count` real roots and conjugate pairs for the rest.
void pair_conjugates(std::vector<Complex>& roots, int real_count) {
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return std::abs(a.imag()) < std::abs(b.imag()); });
  std::vector<Complex> out;
  out.reserve(roots.size());
  for (int i = 0; i < real_count && i < static_cast<int>(roots.size()); ++i) out.emplace_back(roots[static_cast<std::size_t>(i)].real(), 0.0);
  std::vector<Complex> rest(roots.begin() + std::min<std::ptrdiff_t>(real_count, static_cast<std::ptrdiff_t>(roots.size())), roots.end());
  std::vector<bool> used(rest.size(), false);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = rest.size();
    double best_d = HUGE_VAL;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(rest[j] - std::conj(rest[i]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == rest.size()) {  // odd leftover; cannot happen for a real polynomial
      out.push_back(rest[i]);
      continue;
    }
    used[best] = true;
    const double re = 0.5 * (rest[i].real() + rest[best].real());
    const double im = 0.5 * (std::abs(rest[i].imag()) + std::abs(rest[best].imag()));
    out.emplace_back(re, im);
    out.emplace_back(re, -im);
  }
  roots = std::move(out);
}

double relative_residual(const std::vector<DoubleDouble>& a, Complex root) {
  const int n = static_cast<int>(a.size()) - 1;
  const double mod = std::abs(root);
  ComplexDD value;
  double scale = 0.0;
  if (mod <= 1.0) {
    const ComplexDD z(root);
    for (int i = n; i >= 0; --i) {
      value = value * z + ComplexDD(a[static_cast<std::size_t>(i)]);
      scale = scale * mod + std::abs(static_cast<double>(a[static_cast<std::size_t>(i)]));
    }
  } else {
    const ComplexDD y = ComplexDD(1.0) / ComplexDD(root);
    const double ym = 1.0 / mod;
    for (int i = 0; i <= n; ++i) {
      value = value * y + ComplexDD(a[static_cast<std::size_t>(i)]);
      scale = scale * ym + std::abs(static_cast<double>(a[static_cast<std::size_t>(i)]));
    }
  }
  return scale > 0.0 ? magnitude(value) / scale : 0.0;
}

}  // namespace

RootSet find_roots(const IntPolynomial& p, const RootOptions& options) {
  if (p.degree() < 1) throw Error(ErrorKind::Undefined, "find_roots needs degree >= 1");
  RootSet out;

  int zeros = 0;
  while (p.coefficient(zeros) == 0) ++zeros;
  out.roots.assign(static_cast<std::size_t>(zeros), Complex(0.0, 0.0));
  out.max_multiplicity = std::max(1, zeros);

  if (p.degree() > zeros) {
    std::vector<Integer> shifted(p.coefficients().begin() + zeros, p.coefficients().end());
    const IntPolynomial q(std::move(shifted));
    for (const auto& [factor, mult] : squarefree_decomposition(q)) {
      if (factor.degree() < 1) continue;
      const std::vector<DoubleDouble> a = factor.to_dd();
      std::vector<ComplexDD> a_c(a.begin(), a.end());
      std::vector<ComplexDD> z = polygon_guesses<ComplexDD>(log_abs_coefficients(factor));
      const int it = aberth(a_c, z, 1e-29, 1.2e-32, options.max_iterations);
      if (it < 0) out.converged = false;
      out.iterations = std::max(out.iterations, std::abs(it));

      std::vector<Complex> fr;
      fr.reserve(z.size());
      for (const auto& v : z) fr.push_back(v.to_complex());
      pair_conjugates(fr, real_root_count(factor));
      for (int k = 0; k < mult; ++k) out.roots.insert(out.roots.end(), fr.begin(), fr.end());
      out.max_multiplicity = std::max(out.max_multiplicity, mult);
    }
  }

  const std::vector<DoubleDouble> full = p.to_dd();
  for (const auto& r : out.roots) out.residual_bound = std::max(out.residual_bound, relative_residual(full, r));
  if (out.residual_bound > options.residual_tolerance) out.converged = false;
  return out;
}

std::vector<Complex> complex_roots(std::span<const Complex> coefficients, std::span<const Complex> initial, bool* converged) {
  std::vector<Complex> a(coefficients.begin(), coefficients.end());
  while (!a.empty() && a.back() == Complex(0.0)) a.pop_back();
  if (a.size() < 2) throw Error(ErrorKind::Undefined, "complex_roots needs degree >= 1");
  const std::size_t n = a.size() - 1;
  std::vector<Complex> z;
  if (initial.size() == n) {
    z.assign(initial.begin(), initial.end());
  } else {
    std::vector<double> la;
    for (const auto& c : a) la.push_back(c == Complex(0.0) ? -HUGE_VAL : std::log(std::abs(c)));
    z = polygon_guesses<Complex>(la);
  }
  // warm starts may coincide; nudge exact duplicates apart
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (z[i] == z[j]) z[i] += Complex(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
  const int it = aberth(a, z, 1e-15, 1.1e-16, 500);
  if (converged) *converged = it > 0;
  return z;
}

}  // namespace capheight
