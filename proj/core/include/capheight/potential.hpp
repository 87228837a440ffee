#pragma once

#include <complex>
#include <vector>

#include "capheight/setgeom.hpp"

namespace capheight {

struct Atom {
  Complex point;
  double weight;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;

  double total_mass() const;
  std::size_t size() const noexcept { return atoms.size(); }
};

enum class GreenMode { ClosedForm, Discrete };

struct GreenModel {
  SetDescriptor set;
  GreenMode mode = GreenMode::ClosedForm;
  double robin_constant = 0.0;  // -log c
  // Discrete mode only: collocation points and equilibrium weights.
  BoundarySample sample;
  std::vector<double> weights;
  bool ill_conditioned = false;

  double capacity() const;
  DiscreteMeasure equilibrium() const;
};

// g(z, infinity) from the classical formulas: log+(|z-c|/r) for disks and
// circles, log|f + sqrt(f^2 - 1)| for intervals, escape-time limit for Julia
// sets. Throws UnsupportedMode for anything else.
double green_closed_form(const SetDescriptor& set, Complex z);
double capacity_closed_form(const SetDescriptor& set);

// Collocation solve of the equilibrium problem on a boundary sample:
//   sum_j K_ij w_j = gamma,  sum_j w_j = 1,
// K_ij = -log|z_i - z_j| off the diagonal and -log(delta_i / 2pi) on it.
GreenModel equilibrium_discrete(const BoundarySample& sample);
GreenModel equilibrium_discrete(const SetDescriptor& set, const BoundarySample& sample);

// Closed form when available (unless force_discrete), else a discrete solve
// on m boundary points.
GreenModel make_green_model(const SetDescriptor& set, int m = 400, bool force_discrete = false);

double green_eval(const GreenModel& model, Complex z);
// Equilibrium potential U(z) = integral of log 1/|z-w|; equals
// robin_constant - g(z) off the set.
double equilibrium_potential(const GreenModel& model, Complex z);

// Greedy Vandermonde maximizers over boundary candidates (8n per set;
// intervals use 8n+1 Chebyshev-Lobatto nodes so the endpoints are present).
std::vector<Complex> leja_points(const SetDescriptor& set, int n);
std::vector<Complex> leja_candidates(const SetDescriptor& set, int n);
std::vector<Complex> leja_points(const std::vector<Complex>& candidates, int n);

// (prod_{i<j} |x_i - x_j|)^{2/(n(n-1))}
double vandermonde_mean(const std::vector<Complex>& pts);

struct TransfiniteEstimate {
  double d_n = 0.0;
  double leja_d_n = 0.0;
  int exchanges = 0;
  std::vector<Complex> points;
};

// Leja start, then (if refine) single-point exchange passes over the same
// candidates until no exchange improves the product.
TransfiniteEstimate transfinite_diameter_estimate(const SetDescriptor& set, int n, bool refine);

// Crossings of {g = level} along `rays` rays from the sample centroid,
// outermost crossing per ray, as a closed arc anchored at the centroid.
Arc trace_level_set(const GreenModel& model, double level, int rays);

}  // namespace capheight
