#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capheight/intpoly.hpp"
#include "capheight/potential.hpp"
#include "capheight/roots.hpp"

namespace capheight {

struct HeightTolerances {
  double root_residual = 1e-8;
  double height = 1e-6;
};

struct HeightReport {
  IntPolynomial polynomial;
  std::string set;
  int degree = 0;
  double leading_log = 0.0;  // log|lead|
  double weil_height = 0.0;
  double h_sigma = 0.0;
  double h_hat_sigma = 0.0;
  double log_mahler = 0.0;
  double log_mahler_sigma = 0.0;
  std::vector<Complex> roots;
  std::vector<double> per_root_green;
  std::vector<bool> root_in_outer_domain;  // root lies in the unbounded complement component
  double residual_bound = 0.0;
  std::optional<bool> irreducible;
  HeightTolerances tolerances;
};

// (log|lead| + sum log+|x|) / deg over the roots; throws RootConvergence when
// the roots fail the residual tolerance.
double weil_height(const IntPolynomial& p, const HeightTolerances& tol = {});

// log M(P) over the unit circle from roots.
double log_mahler(const IntPolynomial& p, const HeightTolerances& tol = {});
// log M(P) = (1/N) sum log|P(e^{i t_k})| on a midpoint grid.
double jensen_log_mahler(const IntPolynomial& p, int points = 4096);

// Full report. The h-hat sum keeps only roots in the unbounded complement
// component; roots on the boundary count as excluded.
HeightReport height_sigma(const IntPolynomial& p, const GreenModel& model, bool with_hat = true,
                          const HeightTolerances& tol = {});

// log M_Sigma(P) = log|lead| + sum g(root).
double mahler_sigma(const IntPolynomial& p, const GreenModel& model, const HeightTolerances& tol = {});

// |log M(prod P_i) - sum log M(P_i)| / max(1, |sum|).
double mahler_multiplicativity_check(const std::vector<IntPolynomial>& factors, const GreenModel& model);

// sup of |g(z) - log+|z||, taken over Sigma, the unit circle and infinity;
// bounds |h - h_Sigma|.
double height_comparison_constant(const GreenModel& model, int points = 1024);

struct ScanOptions {
  int threads = 1;
  bool prune = true;
  double tolerance = 1e-9;  // reported iff h <= threshold + tolerance
  int prime_budget = 100;
};

struct ScanDiagnostics {
  long long enumerated = 0;       // tuples visited
  long long outside_bound = 0;    // tuples of the box skipped by the height bound
  long long above_threshold = 0;  // rejected by height
  long long non_primitive = 0;
  long long reducible = 0;
  long long unknown_skipped = 0;  // irreducibility undecided (degree > 4)
  long long hits = 0;
};

struct ScanResult {
  std::vector<HeightReport> hits;
  ScanDiagnostics diagnostics;
};

// All primitive irreducible P with deg <= degree_max, |coefficients| <=
// coeff_bound, positive leading coefficient, and h_Sigma(P) <= threshold;
// sorted by height then lexicographically.
ScanResult northcott_scan(const GreenModel& model, int degree_max, int coeff_bound, double threshold,
                          const ScanOptions& options = {});

struct GrowthRow {
  int degree = 0;
  double lead_root = 0.0;           // |lead|^{1/deg}
  double log_mahler_per_degree = 0.0;  // (1/deg) log M_Sigma
  double green_per_degree = 0.0;    // (1/deg) sum g(root)
  int max_multiplicity = 1;
  bool flagged = false;             // root convergence failed
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  double tail_min_lead_root = 0.0;
  double tail_min_log_mahler = 0.0;
};

GrowthTable leading_growth_scan(const std::vector<IntPolynomial>& family, const GreenModel& model);

// Index of the first member of the tail half (last ceil(N/2) entries).
inline std::size_t tail_start(std::size_t n) { return n / 2; }

}  // namespace capheight
