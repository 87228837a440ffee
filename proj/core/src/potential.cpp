#include "capheight/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "capheight/error.hpp"

namespace {

// Outside namespace capheight: the Integer * IntPolynomial operator there
// would otherwise be tried (and fail hard) on Eigen operands.
double max_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const Eigen::VectorXd r = a * x - b;
  return r.cwiseAbs().maxCoeff();
}

}  // namespace

namespace capheight {

namespace {

constexpr double kPi = std::numbers::pi;

double julia_green(const IntPolynomial& p, Complex z) {
  const int d = p.degree();
  const std::vector<double> c = p.to_double();
  const double lead_log = log_abs(p.leading());
  double scale = 1.0;
  for (int j = 0; j < 2000; ++j) {
    const double r = std::abs(z);
    if (r > 1e12) return std::max(0.0, scale * (std::log(r) + lead_log / (d - 1)));
    Complex v = c.back();
    for (int i = d - 1; i >= 0; --i) v = v * z + c[static_cast<std::size_t>(i)];
    z = v;
    scale /= d;
    if (scale == 0.0) break;
  }
  return 0.0;
}

double interval_green(double a, double b, Complex z) {
  const Complex f = (2.0 * z - (a + b)) / (b - a);
  const Complex s = std::sqrt(f * f - 1.0);
  return std::log(std::max(std::abs(f + s), std::abs(f - s)));
}

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

double GreenModel::capacity() const { return std::exp(-robin_constant); }

DiscreteMeasure GreenModel::equilibrium() const {
  DiscreteMeasure mu;
  for (std::size_t i = 0; i < weights.size(); ++i) mu.atoms.push_back({sample.point(i), weights[i]});
  return mu;
}

double green_closed_form(const SetDescriptor& set, Complex z) {
  if (const auto* d = std::get_if<Disk>(&set)) return log_plus(std::abs(z - d->center) / d->radius);
  if (const auto* c = std::get_if<Circle>(&set)) return log_plus(std::abs(z - c->center) / c->radius);
  if (const auto* i = std::get_if<Interval>(&set)) return interval_green(i->a, i->b, z);
  if (const auto* j = std::get_if<JuliaSet>(&set)) return julia_green(j->poly, z);
  throw Error(ErrorKind::UnsupportedMode, "no closed-form Green function for " + describe(set));
}

double capacity_closed_form(const SetDescriptor& set) {
  if (const auto* d = std::get_if<Disk>(&set)) return d->radius;
  if (const auto* c = std::get_if<Circle>(&set)) return c->radius;
  if (const auto* i = std::get_if<Interval>(&set)) return (i->b - i->a) / 4.0;
  if (const auto* j = std::get_if<JuliaSet>(&set))
    return std::exp(-log_abs(j->poly.leading()) / (j->poly.degree() - 1));
  throw Error(ErrorKind::UnsupportedMode, "no closed-form capacity for " + describe(set));
}

GreenModel equilibrium_discrete(const BoundarySample& sample) {
  const std::vector<Complex> pts = sample.points();
  return equilibrium_discrete(make_arc(pts, false), sample);
}

GreenModel equilibrium_discrete(const SetDescriptor& set, const BoundarySample& sample) {
  const std::size_t m = sample.size();
  if (m < 16) throw Error(ErrorKind::DegenerateSample, "equilibrium solve needs at least 16 points");
  Eigen::MatrixXd A(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(sample.spacing[i] > 0.0)) throw Error(ErrorKind::DegenerateSample, "non-positive spacing");
    A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = -std::log(sample.spacing[i] / (2.0 * kPi));
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dist = sample.distance(i, j);
      if (!(dist > 0.0)) throw Error(ErrorKind::DegenerateSample, "duplicate sample points");
      const double k = -std::log(dist);
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k;
      A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = k;
    }
    A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) = -1.0;
    A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i)) = 1.0;
  }
  A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) = 0.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m + 1));
  rhs(static_cast<Eigen::Index>(m)) = 1.0;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) throw Error(ErrorKind::DegenerateSample, "singular collocation system");
  const double resid = max_residual(A, x, rhs);
  if (std::isnan(resid) || resid >= 1e-6) throw Error(ErrorKind::DegenerateSample, "collocation system is numerically singular");

  GreenModel model;
  model.set = set;
  model.mode = GreenMode::Discrete;
  model.sample = sample;
  model.weights.resize(m);
  double wmin = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    model.weights[i] = x(static_cast<Eigen::Index>(i));
    wmin = std::min(wmin, model.weights[i]);
  }
  model.robin_constant = x(static_cast<Eigen::Index>(m));
  model.ill_conditioned = wmin < -1e-6;
  return model;
}

GreenModel make_green_model(const SetDescriptor& set, int m, bool force_discrete) {
  validate(set);
  if (is_closed_form(set) && !force_discrete) {
    GreenModel model;
    model.set = set;
    model.mode = GreenMode::ClosedForm;
    model.robin_constant = -std::log(capacity_closed_form(set));
    return model;
  }
  return equilibrium_discrete(set, sample_boundary(set, m));
}

double equilibrium_potential(const GreenModel& model, Complex z) {
  if (model.mode == GreenMode::ClosedForm) return model.robin_constant - green_closed_form(model.set, z);
  double u = 0.0;
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    const double dist = std::abs((z - model.sample.anchors[i]) - model.sample.offsets[i]);
    u -= model.weights[i] * std::log(dist);
  }
  return u;
}

double green_eval(const GreenModel& model, Complex z) {
  if (model.mode == GreenMode::ClosedForm) return green_closed_form(model.set, z);
  const double g = model.robin_constant - equilibrium_potential(model, z);
  return std::isnan(g) ? 0.0 : std::max(0.0, g);
}

std::vector<Complex> leja_candidates(const SetDescriptor& set, int n) {
  if (const auto* i = std::get_if<Interval>(&set)) {
    const int k = 8 * n;
    std::vector<Complex> out;
    const double mid = 0.5 * (i->a + i->b);
    const double half = 0.5 * (i->b - i->a);
    for (int j = 0; j <= k; ++j) out.emplace_back(mid + half * std::cos(kPi * j / k), 0.0);
    out.front() = Complex(i->b, 0.0);
    out.back() = Complex(i->a, 0.0);
    return out;
  }
  return sample_boundary(set, 8 * n).points();
}

std::vector<Complex> leja_points(const std::vector<Complex>& cand, int n) {
  if (n < 1) throw Error(ErrorKind::InsufficientCandidates, "need at least one point");
  if (static_cast<std::size_t>(n) > cand.size())
    throw Error(ErrorKind::InsufficientCandidates, "requested more points than candidates");
  std::vector<Complex> out;
  std::vector<double> score(cand.size(), 0.0);
  std::vector<bool> used(cand.size(), false);
  std::size_t first = 0;
  for (std::size_t i = 1; i < cand.size(); ++i)
    if (std::abs(cand[i]) > std::abs(cand[first])) first = i;
  std::size_t pick = first;
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      pick = cand.size();
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (used[i]) continue;
        if (pick == cand.size() || score[i] > score[pick]) pick = i;
      }
    }
    used[pick] = true;
    out.push_back(cand[pick]);
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (!used[i]) score[i] += std::log(std::abs(cand[i] - cand[pick]));
  }
  return out;
}

std::vector<Complex> leja_points(const SetDescriptor& set, int n) {
  if (n < 2) throw Error(ErrorKind::InsufficientCandidates, "leja_points needs n >= 2");
  return leja_points(leja_candidates(set, n), n);
}

double vandermonde_mean(const std::vector<Complex>& pts) {
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += std::log(std::abs(pts[i] - pts[j]));
  return std::exp(2.0 * s / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

TransfiniteEstimate transfinite_diameter_estimate(const SetDescriptor& set, int n, bool refine) {
  if (n < 3) throw Error(ErrorKind::InsufficientCandidates, "transfinite estimate needs n >= 3");
  const std::vector<Complex> cand = leja_candidates(set, n);
  const std::vector<Complex> start = leja_points(cand, n);
  TransfiniteEstimate est;
  est.leja_d_n = vandermonde_mean(start);
  est.points = start;
  if (refine) {
    // index of each chosen point among the candidates
    std::vector<std::size_t> chosen;
    for (const auto& p : start) chosen.push_back(static_cast<std::size_t>(std::find(cand.begin(), cand.end(), p) - cand.begin()));
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        auto score = [&](std::size_t c) {
          double s = 0.0;
          for (std::size_t j = 0; j < chosen.size(); ++j) {
            if (j == i) continue;
            if (chosen[j] == c) return -HUGE_VAL;
            s += std::log(std::abs(cand[c] - cand[chosen[j]]));
          }
          return s;
        };
        const double current = score(chosen[i]);
        std::size_t best = chosen[i];
        double best_s = current;
        for (std::size_t c = 0; c < cand.size(); ++c) {
          const double s = score(c);
          if (s > best_s + 1e-12 * std::max(1.0, std::abs(best_s))) {
            best_s = s;
            best = c;
          }
        }
        if (best != chosen[i]) {
          chosen[i] = best;
          ++est.exchanges;
          improved = true;
        }
      }
    }
    est.points.clear();
    for (std::size_t c : chosen) est.points.push_back(cand[c]);
  }
  est.d_n = vandermonde_mean(est.points);
  return est;
}

Arc trace_level_set(const GreenModel& model, double level, int rays) {
  if (!(level > 0.0)) throw Error(ErrorKind::LevelUnreachable, "level must be positive");
  if (rays < 4) throw Error(ErrorKind::InvalidConfig, "need at least 4 rays");
  Complex anchor;
  double r0;
  if (model.mode == GreenMode::Discrete) {
    anchor = centroid(model.sample);
    r0 = 0.0;
    for (std::size_t i = 0; i < model.sample.size(); ++i) r0 = std::max(r0, std::abs(model.sample.point(i) - anchor));
  } else {
    const BoundingDisk bd = bounding_disk(model.set);
    anchor = bd.center;
    r0 = bd.radius;
  }
  const bool symmetric = check_conjugation_symmetry(model.set) && std::abs(anchor.imag()) <= 1e-12 * std::max(1.0, std::abs(anchor));
  if (symmetric) anchor = Complex(anchor.real(), 0.0);
  r0 = std::max(r0, 1e-6);

  auto crossing = [&](double theta) {
    const Complex dir = std::polar(1.0, theta);
    auto g = [&](double r) { return green_eval(model, anchor + r * dir); };
    double hi = r0;
    while (g(hi) <= level) {
      hi *= 2.0;
      if (hi > 1e15) throw Error(ErrorKind::LevelUnreachable, "level not reached along a ray");
    }
    double lo = hi;
    // step inward until below the level; this finds the outermost crossing
    for (;;) {
      const double next = lo * 0.95;
      if (next < 1e-12 * r0) break;
      lo = next;
      if (g(lo) <= level) break;
      hi = lo;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) > level) hi = mid;
      else lo = mid;
    }
    return 0.5 * (lo + hi) * dir;
  };

  Arc arc{anchor, std::vector<Complex>(static_cast<std::size_t>(rays)), true};
  const bool mirror = symmetric && rays % 2 == 0;
  for (int k = 0; k < rays; ++k) {
    if (mirror && k > rays / 2) {
      arc.offsets[static_cast<std::size_t>(k)] = std::conj(arc.offsets[static_cast<std::size_t>(rays - k)]);
      continue;
    }
    Complex v = crossing(2.0 * kPi * k / rays);
    if (mirror && (k == 0 || k == rays / 2)) v = Complex(v.real(), 0.0);
    arc.offsets[static_cast<std::size_t>(k)] = v;
  }
  return arc;
}

}  // namespace capheight
