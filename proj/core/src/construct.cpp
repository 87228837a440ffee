#include "capheight/construct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capheight/error.hpp"

namespace capheight {

namespace {

// Walk `length` along the closed polyline from vertex 0 in direction `step`
// (+1 or -1); returns the visited points relative to vertex 0, excluding it.
std::vector<Complex> walk(const Arc& curve, double length, int step) {
  const int n = static_cast<int>(curve.size());
  std::vector<Complex> out;
  const Complex base = curve.offsets[0];
  double left = length;
  int i = 0;
  for (int k = 0; k < n; ++k) {
    const int j = ((i + step) % n + n) % n;
    const Complex a = curve.offsets[static_cast<std::size_t>(i)] - base;
    const Complex b = curve.offsets[static_cast<std::size_t>(j)] - base;
    const double seg = std::abs(b - a);
    if (seg >= left) {
      out.push_back(a + (left / seg) * (b - a));
      return out;
    }
    out.push_back(b);
    left -= seg;
    i = j;
  }
  return out;
}

}  // namespace

int smallest_usable_level(double sigma_capacity) {
  return static_cast<int>(std::floor(-std::log(sigma_capacity))) + 1;
}

Arc build_level_arc(const GreenModel& sigma_model, int n, double theta, int rays) {
  if (!(theta > 0.0 && theta <= 1.0)) throw Error(ErrorKind::InvalidConfig, "theta must lie in (0, 1]");
  const Arc curve = trace_level_set(sigma_model, static_cast<double>(n), rays);
  if (theta == 1.0) return curve;
  const double half = 0.5 * theta * curve.length();
  std::vector<Complex> fwd = walk(curve, half, +1);
  std::vector<Complex> back = walk(curve, half, -1);
  Arc arc;
  arc.anchor = curve.anchor + curve.offsets[0];
  arc.closed = false;
  for (auto it = back.rbegin(); it != back.rend(); ++it) arc.offsets.push_back(*it);
  arc.offsets.emplace_back(0.0, 0.0);
  for (const auto& p : fwd) arc.offsets.push_back(p);
  return arc;
}

GreenModel joint_model(const SetDescriptor& sigma, const Arc& arc, int samples) {
  const SetDescriptor joint = make_union({sigma, arc});
  return equilibrium_discrete(joint, sample_boundary(joint, samples));
}

ConstructionState bisect_to_capacity_one(const GreenModel& sigma_model, int n, double eps_cap,
                                         const ConstructionOptions& options) {
  const double c = sigma_model.capacity();
  if (!(c > 0.0 && c < 1.0)) {
    std::ostringstream os;
    os << "construction needs 0 < c(Sigma) < 1, got " << c;
    throw Error(ErrorKind::HypothesisViolation, os.str());
  }
  if (n < 1) throw Error(ErrorKind::InvalidConfig, "level must be a positive integer");

  ConstructionState st;
  st.sigma = sigma_model.set;
  st.level = n;
  st.sigma_capacity = c;
  st.predicted_mass = 1.0 + std::log(c) / n;

  auto evaluate = [&](double theta) {
    Arc arc = build_level_arc(sigma_model, n, theta, options.rays);
    GreenModel jm = joint_model(st.sigma, arc, options.samples);
    st.history.push_back({theta, jm.robin_constant});
    return std::pair{std::move(arc), std::move(jm)};
  };
  auto accept = [&](double theta, std::pair<Arc, GreenModel> result) {
    st.theta = theta;
    st.arc = std::move(result.first);
    st.joint_model = std::move(result.second);
    const int sigma_parts = static_cast<int>(primitives(st.sigma).size());
    st.mass_on_sigma = 0.0;
    for (std::size_t i = 0; i < st.joint_model.weights.size(); ++i)
      if (st.joint_model.sample.component[i] < sigma_parts) st.mass_on_sigma += st.joint_model.weights[i];
    return st;
  };
  auto dump = [&] {
    std::ostringstream os;
    os << " (theta, robin):";
    for (const auto& h : st.history) os << " (" << h.theta << ", " << h.robin << ")";
    return os.str();
  };

  auto full = evaluate(1.0);
  const double g_full = full.second.robin_constant;
  if (std::abs(g_full) <= eps_cap) return accept(1.0, std::move(full));
  if (g_full > 0.0) {
    std::ostringstream os;
    os << "level " << n << " is too low: whole level curve gives capacity " << std::exp(-g_full)
       << "; smallest usable level is " << smallest_usable_level(c);
    throw Error(ErrorKind::LevelTooLow, os.str());
  }

  double lo = options.theta_min;
  double hi = 1.0;
  double g_lo;
  {
    auto low = evaluate(lo);
    g_lo = low.second.robin_constant;
    if (std::abs(g_lo) <= eps_cap) return accept(lo, std::move(low));
    if (g_lo < 0.0) throw Error(ErrorKind::MonotonicityViolation, "smallest arc already exceeds capacity 1;" + dump());
  }
  double g_hi = g_full;
  for (int it = 0; it < options.max_bisections; ++it) {
    const double mid = std::sqrt(lo * hi);
    auto r = evaluate(mid);
    const double g = r.second.robin_constant;
    if (g > g_lo + 1e-9 || g < g_hi - 1e-9) throw Error(ErrorKind::MonotonicityViolation, "capacity not monotone in theta;" + dump());
    if (std::abs(g) <= eps_cap) return accept(mid, std::move(r));
    if (g > 0.0) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
      g_hi = g;
    }
    if (hi / lo - 1.0 < 1e-15) break;
  }
  throw Error(ErrorKind::MonotonicityViolation, "bisection did not reach the capacity target;" + dump());
}

MassLaw mass_law_check(const ConstructionState& state, const GreenModel& sigma_model) {
  MassLaw out{};
  out.measured = state.mass_on_sigma;
  out.predicted = state.predicted_mass;
  out.gap = std::abs(out.measured - out.predicted);
  const GreenModel& jm = state.joint_model;
  for (std::size_t i = 0; i < jm.weights.size(); ++i) out.green_integral += jm.weights[i] * green_eval(sigma_model, jm.sample.point(i));
  return out;
}

std::vector<RemarkRow> remark_convergence_check(const std::vector<ConstructionState>& states, const GreenModel& sigma_model,
                                                const std::vector<Complex>& probe) {
  std::vector<RemarkRow> out;
  for (const auto& st : states) {
    const GreenModel& jm = st.joint_model;
    const int sigma_parts = static_cast<int>(primitives(st.sigma).size());
    RemarkRow row{st.level, 0.0, 1.0 - st.mass_on_sigma};
    for (const auto& z : probe) {
      double u = 0.0;
      for (std::size_t i = 0; i < jm.weights.size(); ++i) {
        if (jm.sample.component[i] >= sigma_parts) continue;
        u -= jm.weights[i] * std::log(std::abs(z - jm.sample.point(i)));
      }
      u /= st.mass_on_sigma;
      row.discrepancy = std::max(row.discrepancy, std::abs(u - equilibrium_potential(sigma_model, z)));
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace capheight
