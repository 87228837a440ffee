#include "capheight/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "capheight/error.hpp"
#include "capheight/heights.hpp"

namespace capheight {

namespace {

// Row sums combined by pairwise halving, so the result does not depend on
// how rows were scheduled.
double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::vector<double> next((v.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = v[2 * i] + (2 * i + 1 < v.size() ? v[2 * i + 1] : 0.0);
    v = std::move(next);
  }
  return v[0];
}

template <class Kernel>
double offdiagonal_energy(const DiscreteMeasure& mu, Kernel kernel) {
  const std::size_t n = mu.size();
  if (n < 2) throw Error(ErrorKind::Undefined, "energy needs at least 2 atoms");
  std::vector<double> rows(n, 0.0);
  double m = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = mu.atoms[i].weight;
    m += wi;
    sq += wi * wi;
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double wj = mu.atoms[j].weight;
      if (wi == 0.0 || wj == 0.0) continue;
      const double d = std::abs(mu.atoms[i].point - mu.atoms[j].point);
      r += wi * wj * kernel(d);
    }
    rows[i] = r;
  }
  const double denom = m * m - sq;
  if (!(denom > 0.0)) throw Error(ErrorKind::Undefined, "energy needs two atoms of positive weight");
  return pairwise_sum(std::move(rows)) / denom;
}

}  // namespace

DiscreteMeasure empirical_measure(const std::vector<Complex>& points) {
  if (points.empty()) throw Error(ErrorKind::Undefined, "empirical measure of no points");
  DiscreteMeasure mu;
  const double w = 1.0 / static_cast<double>(points.size());
  for (const auto& p : points) mu.atoms.push_back({p, w});
  return mu;
}

DiscreteMeasure empirical_measure(const RootSet& roots) { return empirical_measure(roots.roots); }

double potential_eval(const DiscreteMeasure& mu, Complex z) {
  double u = 0.0;
  for (const auto& a : mu.atoms) {
    const double d = std::abs(z - a.point);
    if (d == 0.0 && a.weight > 0.0) return HUGE_VAL;
    if (a.weight != 0.0) u -= a.weight * std::log(d);
  }
  return u;
}

double energy(const DiscreteMeasure& mu) {
  bool coincident = false;
  const double e = offdiagonal_energy(mu, [&](double d) {
    if (d == 0.0) coincident = true;
    return d == 0.0 ? 0.0 : -std::log(d);
  });
  return coincident ? HUGE_VAL : e;
}

double truncated_energy(const DiscreteMeasure& mu, double cap) {
  return offdiagonal_energy(mu, [cap](double d) { return d == 0.0 ? cap : std::min(cap, -std::log(d)); });
}

double mutual_energy(const DiscreteMeasure& tau1, const DiscreteMeasure& tau2) {
  std::vector<double> rows(tau1.size(), 0.0);
  for (std::size_t i = 0; i < tau1.size(); ++i) {
    double r = 0.0;
    for (const auto& b : tau2.atoms) {
      const double d = std::abs(tau1.atoms[i].point - b.point);
      if (d == 0.0) throw Error(ErrorKind::Overlap, "measures share an atom");
      r += tau1.atoms[i].weight * b.weight * -std::log(d);
    }
    rows[i] = r;
  }
  return pairwise_sum(std::move(rows));
}

EscapeEstimate escape_rate_estimate(const std::vector<RootSet>& family, const GreenModel& model,
                                    const std::vector<double>& radii) {
  if (family.empty()) throw Error(ErrorKind::InvalidConfig, "escape rate needs a non-empty family");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw Error(ErrorKind::InvalidConfig, "radii must be increasing");
  // green values once per root
  std::vector<std::vector<double>> g(family.size());
  for (std::size_t k = 0; k < family.size(); ++k)
    for (const auto& x : family[k].roots) g[k].push_back(green_eval(model, x));
  EscapeEstimate est;
  for (double r : radii) {
    double best = HUGE_VAL;
    for (std::size_t k = tail_start(family.size()); k < family.size(); ++k) {
      const auto& roots = family[k].roots;
      double s = 0.0;
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (std::abs(roots[j]) >= r) s += g[k][j];
      best = std::min(best, s / static_cast<double>(roots.size()));
    }
    est.rows.push_back({r, best});
  }
  est.extrapolated = est.rows.empty() ? 0.0 : est.rows.back().value;
  return est;
}

ConvexityResult energy_convexity_check(const DiscreteMeasure& tau1, const DiscreteMeasure& tau2) {
  const double cross = mutual_energy(tau1, tau2);
  const double i1 = energy(tau1);
  const double i2 = energy(tau2);
  auto spread = [](const DiscreteMeasure& mu) {
    double worst = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      double nearest = HUGE_VAL;
      for (std::size_t j = 0; j < mu.size(); ++j)
        if (j != i) nearest = std::min(nearest, std::abs(mu.atoms[i].point - mu.atoms[j].point));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return {i1 + i2 - 2.0 * cross, std::max(spread(tau1), spread(tau2))};
}

std::vector<FamilyMember> make_family(const std::vector<IntPolynomial>& polys, int threads) {
  std::vector<FamilyMember> out(polys.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= polys.size()) return;
      try {
        out[i] = {polys[i], find_roots(polys[i])};
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<Complex> probe_ring(const SetDescriptor& set, int count) {
  const BoundingDisk bd = bounding_disk(set);
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k) out.push_back(bd.center + (bd.radius + 1.0) * std::polar(1.0, 2.0 * std::numbers::pi * k / count));
  return out;
}

PritskerReport pritsker_conditions(const std::vector<FamilyMember>& family, const GreenModel& model, double R) {
  PritskerReport rep;
  rep.capacity = model.capacity();
  rep.radius = R;
  if (std::abs(rep.capacity - 1.0) > 0.02)
    throw Error(ErrorKind::HypothesisViolation, "capacity " + std::to_string(rep.capacity) + " is not within 2% of 1");
  const std::vector<Complex> ring = probe_ring(model.set);
  std::vector<double> u_sigma;
  for (const auto& z : ring) u_sigma.push_back(equilibrium_potential(model, z));
  for (const auto& m : family) {
    PritskerRow row{};
    row.degree = m.poly.degree();
    const double n = row.degree;
    row.c1 = std::exp(log_abs(m.poly.leading()) / n);
    double outer = 0.0;
    for (const auto& x : m.roots.roots)
      if (std::abs(x) >= R) outer += std::log(std::abs(x));
    row.c2 = std::exp(outer / n);
    const DiscreteMeasure mu = empirical_measure(m.roots);
    for (std::size_t k = 0; k < ring.size(); ++k) row.c3 = std::max(row.c3, std::abs(potential_eval(mu, ring[k]) - u_sigma[k]));
    rep.rows.push_back(row);
  }
  return rep;
}

LimitingReport theorem_limiting_check(const std::vector<FamilyMember>& family, const IntPolynomial& q,
                                      const GreenModel& model, double tolerance) {
  if (family.empty()) throw Error(ErrorKind::InvalidConfig, "limiting check needs a non-empty family");
  if (q.degree() < 1) throw Error(ErrorKind::InvalidConfig, "Q needs degree >= 1");
  LimitingReport rep;
  const double dq = q.degree();
  for (const auto& m : family) {
    const Integer res = resultant(q, m.poly);
    if (res == 0) throw Error(ErrorKind::Coprimality, "Q shares a factor with " + m.poly.to_string());
    LimitingRow row{};
    row.degree = m.poly.degree();
    const double dp = row.degree;
    double s = 0.0;
    for (const auto& x : m.roots.roots) s += std::log(magnitude(q.evaluate(ComplexDD(x))));
    row.lhs_roots = s / (dq * dp);
    const double lead_log = log_abs(m.poly.leading());
    row.lhs_resultant = (log_abs(res) - dq * lead_log) / (dq * dp);
    row.lead_log_per_degree = lead_log / dp;
    const DiscreteMeasure mu = empirical_measure(m.roots);
    if (mu.size() >= 2) {
      row.energy = energy(mu);
      row.truncated_energy = truncated_energy(mu);
    }
    rep.max_path_disagreement =
        std::max(rep.max_path_disagreement, std::abs(row.lhs_roots - row.lhs_resultant) / std::max(1.0, std::abs(row.lhs_resultant)));
    rep.rows.push_back(row);
  }
  const std::size_t t0 = tail_start(rep.rows.size());
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (std::size_t i = t0; i < rep.rows.size(); ++i) {
    lo = std::min(lo, rep.rows[i].lead_log_per_degree);
    hi = std::max(hi, rep.rows[i].lead_log_per_degree);
  }
  rep.lead_limit = rep.rows.back().lead_log_per_degree;
  rep.lead_non_cauchy = hi - lo > 0.01;

  std::vector<RootSet> roots;
  for (const auto& m : family) roots.push_back(m.roots);
  const double r0 = bounding_disk(model.set).radius + std::abs(bounding_disk(model.set).center) + 1.0;
  rep.escape_rate = escape_rate_estimate(roots, model, {r0, 2.0 * r0, 4.0 * r0}).extrapolated;
  rep.rhs = -rep.lead_limit - rep.escape_rate;
  rep.energy_bound = 2.0 * (rep.lead_limit + rep.escape_rate);
  rep.tail_min_gap = HUGE_VAL;
  for (std::size_t i = t0; i < rep.rows.size(); ++i) rep.tail_min_gap = std::min(rep.tail_min_gap, rep.rows[i].lhs_resultant - rep.rhs);
  rep.holds = rep.tail_min_gap >= -tolerance && rep.max_path_disagreement <= 1e-6;
  return rep;
}

std::vector<TightnessRow> tightness_diagnostic(const std::vector<std::pair<RootSet, double>>& family,
                                               const std::vector<double>& radii, const GreenModel* model) {
  if (family.empty()) throw Error(ErrorKind::InvalidConfig, "tightness needs a non-empty family");
  std::vector<TightnessRow> out;
  double hmax = -HUGE_VAL;
  for (const auto& [rs, h] : family) hmax = std::max(hmax, h);
  for (double r : radii) {
    TightnessRow row{r, 0.0, hmax, 0.0, HUGE_VAL};
    for (const auto& [rs, h] : family) {
      std::size_t outside = 0;
      for (const auto& x : rs.roots)
        if (std::abs(x) > r) ++outside;
      row.max_mass_outside = std::max(row.max_mass_outside, static_cast<double>(outside) / static_cast<double>(rs.size()));
    }
    if (model) {
      double gmin = HUGE_VAL;
      for (int k = 0; k < 256; ++k) gmin = std::min(gmin, green_eval(*model, r * std::polar(1.0, 2.0 * std::numbers::pi * k / 256)));
      row.min_green = gmin;
      if (gmin > 0.0) row.mass_bound = hmax / gmin;
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace capheight
