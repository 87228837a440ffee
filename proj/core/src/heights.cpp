#include "capheight/heights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "capheight/error.hpp"

namespace capheight {

namespace {

double log_plus_abs(Complex z) {
  const double r = std::abs(z);
  return r > 1.0 ? std::log(r) : 0.0;
}

RootSet checked_roots(const IntPolynomial& p, const HeightTolerances& tol) {
  if (p.degree() < 1) throw Error(ErrorKind::Undefined, "height needs degree >= 1");
  RootOptions opt;
  opt.residual_tolerance = std::min(opt.residual_tolerance, tol.root_residual);
  RootSet rs = find_roots(p, opt);
  if (!rs.converged) {
    std::ostringstream os;
    os << "roots of " << p.to_string() << " did not converge (residual " << rs.residual_bound << ")";
    throw Error(ErrorKind::RootConvergence, os.str());
  }
  return rs;
}

double sum_green(const std::vector<Complex>& roots, const GreenModel& model) {
  double s = 0.0;
  for (const auto& r : roots) s += green_eval(model, r);
  return s;
}

bool outer_domain(const SetDescriptor& set, Complex z) {
  try {
    return in_unbounded_component(set, z);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::AmbiguousPoint) return false;
    throw;
  }
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// cheap numerical height for the scan prefilter
std::optional<double> approx_height(const std::vector<long long>& c, const GreenModel& model) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<Complex> roots;
  if (d == 1) {
    roots.emplace_back(-static_cast<double>(c[0]) / static_cast<double>(c[1]), 0.0);
  } else if (d == 2) {
    const double a = static_cast<double>(c[2]), b = static_cast<double>(c[1]), cc = static_cast<double>(c[0]);
    const Complex disc = std::sqrt(Complex(b * b - 4.0 * a * cc, 0.0));
    const Complex q = -0.5 * (b + (b >= 0 ? disc : -disc));
    if (q == Complex(0.0)) {
      roots = {Complex(0.0), Complex(0.0)};
    } else {
      roots = {q / a, cc / q};
    }
  } else {
    std::vector<Complex> cd;
    for (long long v : c) cd.emplace_back(static_cast<double>(v), 0.0);
    bool ok = false;
    roots = complex_roots(cd, {}, &ok);
    if (!ok) return std::nullopt;
  }
  return (std::log(static_cast<double>(c.back())) + sum_green(roots, model)) / d;
}

struct Stripe {
  int degree;
  long long lead;
};

}  // namespace

double weil_height(const IntPolynomial& p, const HeightTolerances& tol) {
  const RootSet rs = checked_roots(p, tol);
  double s = log_abs(p.leading());
  for (const auto& r : rs.roots) s += log_plus_abs(r);
  return s / p.degree();
}

double log_mahler(const IntPolynomial& p, const HeightTolerances& tol) {
  const RootSet rs = checked_roots(p, tol);
  double s = log_abs(p.leading());
  for (const auto& r : rs.roots) s += log_plus_abs(r);
  return s;
}

double jensen_log_mahler(const IntPolynomial& p, int points) {
  if (p.is_zero()) throw Error(ErrorKind::Undefined, "Mahler measure of the zero polynomial");
  double s = 0.0;
  for (int k = 0; k < points; ++k) {
    const double t = 2.0 * std::numbers::pi * (k + 0.5) / points;
    const ComplexDD z(std::polar(1.0, t));
    s += std::log(magnitude(p.evaluate(z)));
  }
  return s / points;
}

HeightReport height_sigma(const IntPolynomial& p, const GreenModel& model, bool with_hat, const HeightTolerances& tol) {
  const RootSet rs = checked_roots(p, tol);
  HeightReport r;
  r.polynomial = p;
  r.set = describe(model.set);
  r.degree = p.degree();
  r.leading_log = log_abs(p.leading());
  r.roots = rs.roots;
  r.residual_bound = rs.residual_bound;
  r.tolerances = tol;
  double lp = 0.0, g = 0.0, ghat = 0.0;
  for (const auto& x : rs.roots) {
    const double gx = green_eval(model, x);
    r.per_root_green.push_back(gx);
    g += gx;
    lp += log_plus_abs(x);
    if (with_hat) {
      const bool outer = outer_domain(model.set, x);
      r.root_in_outer_domain.push_back(outer);
      if (outer) ghat += gx;
    }
  }
  r.log_mahler = r.leading_log + lp;
  r.log_mahler_sigma = r.leading_log + g;
  r.weil_height = r.log_mahler / r.degree;
  r.h_sigma = (r.leading_log + g) / r.degree;
  r.h_hat_sigma = with_hat ? (r.leading_log + ghat) / r.degree : r.h_sigma;
  return r;
}

double mahler_sigma(const IntPolynomial& p, const GreenModel& model, const HeightTolerances& tol) {
  const RootSet rs = checked_roots(p, tol);
  return log_abs(p.leading()) + sum_green(rs.roots, model);
}

double mahler_multiplicativity_check(const std::vector<IntPolynomial>& factors, const GreenModel& model) {
  if (factors.size() < 2) throw Error(ErrorKind::InvalidConfig, "need at least two factors");
  IntPolynomial prod = IntPolynomial::constant(1);
  double sum = 0.0;
  for (const auto& f : factors) {
    if (f.degree() < 1) throw Error(ErrorKind::InvalidConfig, "factors need degree >= 1");
    prod = prod * f;
    sum += mahler_sigma(f, model);
  }
  const double whole = mahler_sigma(prod, model);
  return std::abs(whole - sum) / std::max(1.0, std::abs(sum));
}

double height_comparison_constant(const GreenModel& model, int points) {
  // g - log+|z| is harmonic off Sigma and the unit circle, so its extremes sit
  // on one of those curves or at infinity, where it tends to the Robin constant.
  double sup = std::abs(model.robin_constant);
  const BoundarySample b = sample_boundary(model.set, std::max(points, 16));
  for (std::size_t i = 0; i < b.size(); ++i) sup = std::max(sup, std::abs(green_eval(model, b.point(i)) - log_plus_abs(b.point(i))));
  for (int k = 0; k < points; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
    sup = std::max(sup, std::abs(green_eval(model, z) - log_plus_abs(z)));
  }
  return sup;
}

ScanResult northcott_scan(const GreenModel& model, int degree_max, int coeff_bound, double threshold,
                          const ScanOptions& options) {
  if (degree_max < 1 || coeff_bound < 1) throw Error(ErrorKind::InvalidConfig, "scan needs degree_max >= 1 and coeff_bound >= 1");
  const BoundingDisk bd = bounding_disk(model.set);
  const double outer = std::max(0.0, std::log(std::abs(bd.center) + bd.radius));
  const double t = threshold + options.tolerance;
  const double margin = 0.05;  // prefilter slack over numerical root error

  // Disk bound g(z) >= log+(|z-c|/r): lead <= e^{dt}, |a_k| <= C(d,k) e^{d(outer+t)}.
  auto lead_limit = [&](int d) -> long long {
    if (!options.prune) return coeff_bound;
    const double v = std::exp(d * t);
    return std::min<long long>(coeff_bound, static_cast<long long>(std::floor(v * (1.0 + 1e-12))));
  };
  auto coeff_limit = [&](int d, int k) -> long long {
    if (!options.prune) return coeff_bound;
    const double v = static_cast<double>(binom(d, k)) * std::exp(d * (outer + t));
    if (v >= coeff_bound) return coeff_bound;
    return static_cast<long long>(std::floor(v * (1.0 + 1e-12)));
  };

  std::vector<Stripe> stripes;
  for (int d = 1; d <= degree_max; ++d)
    for (long long a = 1; a <= lead_limit(d); ++a) stripes.push_back({d, a});

  std::vector<std::vector<HeightReport>> found(stripes.size());
  std::vector<ScanDiagnostics> diag(stripes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t s = next.fetch_add(1);
      if (s >= stripes.size()) return;
      try {
        const int d = stripes[s].degree;
        ScanDiagnostics& dg = diag[s];
        std::vector<long long> lim(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) lim[static_cast<std::size_t>(k)] = coeff_limit(d, k);
        std::vector<long long> c(static_cast<std::size_t>(d) + 1);
        c[static_cast<std::size_t>(d)] = stripes[s].lead;
        for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] = -lim[static_cast<std::size_t>(k)];
        for (;;) {
          ++dg.enumerated;
          const bool is_x = d == 1 && c[0] == 0 && c[1] == 1;
          if (c[0] != 0 || is_x) {
            long long g = 0;
            for (long long v : c) g = std::gcd(g, v);
            if (g != 1) {
              ++dg.non_primitive;
            } else {
              const auto approx = approx_height(c, model);
              if (approx && *approx > t + margin) {
                ++dg.above_threshold;
              } else {
                std::vector<Integer> ci(c.begin(), c.end());
                const IntPolynomial p(std::move(ci));
                HeightReport rep = height_sigma(p, model, false);
                if (rep.h_sigma > t) {
                  ++dg.above_threshold;
                } else {
                  const auto irr = decide_irreducible(p, options.prime_budget);
                  if (!irr) {
                    ++dg.unknown_skipped;
                  } else if (!*irr) {
                    ++dg.reducible;
                  } else {
                    rep.irreducible = true;
                    found[s].push_back(std::move(rep));
                  }
                }
              }
            }
          }
          // odometer over c[0..d-1]
          int k = 0;
          while (k < d && c[static_cast<std::size_t>(k)] == lim[static_cast<std::size_t>(k)]) {
            c[static_cast<std::size_t>(k)] = -lim[static_cast<std::size_t>(k)];
            ++k;
          }
          if (k == d) break;
          ++c[static_cast<std::size_t>(k)];
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int nt = std::max(1, options.threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  ScanResult out;
  long long box = 0;
  for (int d = 1; d <= degree_max; ++d) {
    long long per = coeff_bound;
    for (int k = 0; k < d; ++k) per *= 2LL * coeff_bound + 1;
    box += per;
  }
  for (std::size_t s = 0; s < stripes.size(); ++s) {
    const ScanDiagnostics& dg = diag[s];
    out.diagnostics.enumerated += dg.enumerated;
    out.diagnostics.above_threshold += dg.above_threshold;
    out.diagnostics.non_primitive += dg.non_primitive;
    out.diagnostics.reducible += dg.reducible;
    out.diagnostics.unknown_skipped += dg.unknown_skipped;
    for (auto& r : found[s]) out.hits.push_back(std::move(r));
  }
  out.diagnostics.outside_bound = box - out.diagnostics.enumerated;
  out.diagnostics.hits = static_cast<long long>(out.hits.size());
  std::sort(out.hits.begin(), out.hits.end(), [](const HeightReport& a, const HeightReport& b) {
    const long long ka = std::llround(a.h_sigma * 1e10);
    const long long kb = std::llround(b.h_sigma * 1e10);
    if (ka != kb) return ka < kb;
    return lexicographic_less(a.polynomial, b.polynomial);
  });
  return out;
}

GrowthTable leading_growth_scan(const std::vector<IntPolynomial>& family, const GreenModel& model) {
  GrowthTable table;
  for (const auto& p : family) {
    GrowthRow row;
    row.degree = p.degree();
    if (row.degree < 1) throw Error(ErrorKind::InvalidConfig, "family members need degree >= 1");
    const double ll = log_abs(p.leading());
    row.lead_root = std::exp(ll / row.degree);
    const RootSet rs = find_roots(p);
    row.flagged = !rs.converged;
    row.max_multiplicity = rs.max_multiplicity;
    const double g = sum_green(rs.roots, model);
    row.green_per_degree = g / row.degree;
    row.log_mahler_per_degree = (ll + g) / row.degree;
    table.rows.push_back(row);
  }
  if (!table.rows.empty()) {
    table.tail_min_lead_root = HUGE_VAL;
    table.tail_min_log_mahler = HUGE_VAL;
    for (std::size_t i = tail_start(table.rows.size()); i < table.rows.size(); ++i) {
      table.tail_min_lead_root = std::min(table.tail_min_lead_root, table.rows[i].lead_root);
      table.tail_min_log_mahler = std::min(table.tail_min_log_mahler, table.rows[i].log_mahler_per_degree);
    }
  }
  return table;
}

}  // namespace capheight
