#pragma once

#include <vector>

#include "capheight/intpoly.hpp"
#include "capheight/potential.hpp"
#include "capheight/roots.hpp"

namespace capheight {

// Uniform probability measure on the roots (with multiplicity).
DiscreteMeasure empirical_measure(const RootSet& roots);
DiscreteMeasure empirical_measure(const std::vector<Complex>& points);

// U(z) = sum w_i log 1/|z - x_i|; +inf at an atom.
double potential_eval(const DiscreteMeasure& mu, Complex z);

// Off-diagonal energy normalized by the off-diagonal mass:
//   sum_{i != j} w_i w_j log 1/|x_i - x_j| / (m^2 - sum w_i^2),
// m the total mass. For uniform weights this is the pair average.
// +inf when two atoms with positive weight coincide.
double energy(const DiscreteMeasure& mu);
// Same normalization with the kernel min(cap, log 1/|x - y|).
double truncated_energy(const DiscreteMeasure& mu, double cap = 30.0);
// Full double sum of log 1/|x - y| d tau1(x) d tau2(y); throws Overlap when
// the supports share an atom.
double mutual_energy(const DiscreteMeasure& tau1, const DiscreteMeasure& tau2);

struct EscapeRow {
  double radius;
  double value;  // min over the tail half of (1/deg) sum_{|x| >= r} g(x)
};

struct EscapeEstimate {
  std::vector<EscapeRow> rows;
  double extrapolated = 0.0;  // value at the largest radius
};

// Each RootSet is one family member; its degree is the number of roots.
EscapeEstimate escape_rate_estimate(const std::vector<RootSet>& family, const GreenModel& model,
                                    const std::vector<double>& radii);

struct ConvexityResult {
  double residual;    // I(t1) + I(t2) - 2 * mutual
  double resolution;  // largest nearest-neighbour distance in either support
};
ConvexityResult energy_convexity_check(const DiscreteMeasure& tau1, const DiscreteMeasure& tau2);

struct FamilyMember {
  IntPolynomial poly;
  RootSet roots;
};

// Root sets for each polynomial, computed in parallel (one task each).
std::vector<FamilyMember> make_family(const std::vector<IntPolynomial>& polys, int threads = 1);

// Probe ring of `count` points at distance 1 outside the bounding disk.
std::vector<Complex> probe_ring(const SetDescriptor& set, int count = 64);

struct PritskerRow {
  int degree;
  double c1;  // |a_n|^{1/n}
  double c2;  // (prod_{|x| >= R} |x|)^{1/n}
  double c3;  // sup over the probe ring of |U_{mu_n} - U_{mu_Sigma}|
};

struct PritskerReport {
  double capacity;
  double radius;
  std::vector<PritskerRow> rows;
};

// Throws HypothesisViolation unless |c(Sigma) - 1| <= 0.02.
PritskerReport pritsker_conditions(const std::vector<FamilyMember>& family, const GreenModel& model, double R);

struct LimitingRow {
  int degree;
  double lhs_roots;      // (1/deg Q)(1/deg P) sum log|Q(x)|
  double lhs_resultant;  // (log|Res(Q,P)| - deg Q log|b|) / (deg Q deg P)
  double lead_log_per_degree;
  double energy;            // off-diagonal I(mu_n)
  double truncated_energy;  // kernel capped at 30
};

struct LimitingReport {
  std::vector<LimitingRow> rows;
  double lead_limit = 0.0;     // tail value of log|b_n| / deg
  bool lead_non_cauchy = false;  // tail spread of log|b_n|/deg above 0.01
  double escape_rate = 0.0;
  double rhs = 0.0;            // -lead_limit - escape_rate
  double tail_min_gap = 0.0;   // min over the tail half of lhs_resultant - rhs
  double max_path_disagreement = 0.0;  // relative, max(1,|lhs|) floor
  double energy_bound = 0.0;   // 2 (lead_limit + escape_rate)
  bool holds = false;          // tail_min_gap >= -tolerance and paths agree
};

// Throws Coprimality when Q shares a root with a member.
LimitingReport theorem_limiting_check(const std::vector<FamilyMember>& family, const IntPolynomial& q,
                                      const GreenModel& model, double tolerance = 1e-6);

struct TightnessRow {
  double radius;
  double max_mass_outside;  // max over the family of mu_n(|z| > r)
  double max_height;        // max h_Sigma over the family
  double min_green;         // min of g on |z| = r (0 without a model)
  double mass_bound;        // max_height / min_green, inf when min_green = 0
};

std::vector<TightnessRow> tightness_diagnostic(const std::vector<std::pair<RootSet, double>>& family,
                                               const std::vector<double>& radii, const GreenModel* model = nullptr);

}  // namespace capheight
