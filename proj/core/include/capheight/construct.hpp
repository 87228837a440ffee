#pragma once

#include <vector>

#include "capheight/potential.hpp"

namespace capheight {

struct ConstructionOptions {
  int samples = 400;  // joint boundary points, split evenly between the set and the arc
  int rays = 256;
  double theta_min = 1e-40;
  int max_bisections = 400;
};

struct ThetaProbe {
  double theta;
  double robin;
};

struct ConstructionState {
  SetDescriptor sigma;
  int level = 0;
  double theta = 1.0;
  Arc arc;
  GreenModel joint_model;
  double sigma_capacity = 0.0;
  double mass_on_sigma = 0.0;
  double predicted_mass = 0.0;  // 1 + log c(Sigma) / n
  std::vector<ThetaProbe> history;
};

// Sub-arc of the level curve {g = n} covering fraction theta of its length,
// centred on the crossing of the positive real axis (so it is symmetric under
// conjugation when the set is). theta = 1 returns the whole closed curve.
Arc build_level_arc(const GreenModel& sigma_model, int n, double theta, int rays);

// Equilibrium model of Sigma united with the arc.
GreenModel joint_model(const SetDescriptor& sigma, const Arc& arc, int samples);

// Bisection on log theta until |robin(Sigma u E_n(theta))| <= eps_cap.
// Throws HypothesisViolation unless 0 < c(Sigma) < 1, LevelTooLow when even
// the whole level curve leaves the capacity below 1, MonotonicityViolation
// when the bracket is lost.
ConstructionState bisect_to_capacity_one(const GreenModel& sigma_model, int n, double eps_cap = 1e-3,
                                         const ConstructionOptions& options = {});

struct MassLaw {
  double measured;
  double predicted;
  double gap;
  double green_integral;  // integral of g_Sigma against the joint equilibrium measure
};

MassLaw mass_law_check(const ConstructionState& state, const GreenModel& sigma_model);

struct RemarkRow {
  int level;
  double discrepancy;  // sup over the probes of |U_{nu_n|Sigma, renormalized} - U_{mu_Sigma}|
  double arc_mass;     // nu_n(E_n)
};

std::vector<RemarkRow> remark_convergence_check(const std::vector<ConstructionState>& states, const GreenModel& sigma_model,
                                                const std::vector<Complex>& probe);

// Smallest integer level whose full level curve pushes the capacity past 1.
int smallest_usable_level(double sigma_capacity);

}  // namespace capheight
