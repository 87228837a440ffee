// One test per acceptance criterion. Each runs the registered experiment with
// its default configuration, pins the tolerances it was run with, and prints
// a PASS/FAIL line followed by the individual checks.
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>

#include "capheight/experiments.hpp"

using namespace capheight;

namespace {

using Pins = std::map<std::string, std::string>;

Report run_criterion(int criterion, const std::string& id, const Pins& pins) {
  EXPECT_EQ(find_experiment(id).criterion, criterion);
  ExperimentConfig cfg;
  cfg.id = id;
  const Report r = run_experiment(cfg);
  for (const auto& [key, value] : pins) {
    const auto it = r.parameters.find(key);
    EXPECT_TRUE(it != r.parameters.end() && it->second == value)
        << id << ": " << key << " should be " << value << ", got " << (it == r.parameters.end() ? "<missing>" : it->second);
  }
  std::printf("%s criterion %d (%s)\n", r.passed() ? "PASS" : "FAIL", criterion, id.c_str());
  for (const auto& c : r.checks) {
    std::printf("    [%s] %s", c.passed ? "ok" : "FAIL", c.name.c_str());
    if (c.value) std::printf(" = %.6g", *c.value);
    if (c.limit) std::printf(" (%s %.6g)", c.relation.c_str(), *c.limit);
    std::printf("\n");
  }
  std::fflush(stdout);
  return r;
}

// the limit a named check was held to
std::optional<double> limit_of(const Report& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return c.limit;
  return std::nullopt;
}

}  // namespace

TEST(Acceptance, Criterion01_ClosedFormCapacities) {
  const Report r = run_criterion(1, "capacity-closed-form", {{"m", "400"}, {"rel_tol", "0.01"}, {"runtime_limit", "5"}});
  for (const char* s : {"interval -1 1", "circle 0 0 1", "julia -1 0 1"})
    EXPECT_TRUE(limit_of(r, std::string("relative error ") + s).has_value()) << s;
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion02_GreenCrossValidation) {
  const Report r = run_criterion(2, "green-cross", {{"tolerance", "0.01"}, {"probes", "64"}});
  EXPECT_EQ(limit_of(r, "|g_[-1,1](2) - log(2+sqrt 3)|"), 0.01);
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion03_TransfiniteDiameter) {
  const Report r = run_criterion(3, "transfinite",
                                 {{"degrees", "4,8,16,32,64"}, {"target", "0.5"}, {"rel_tol", "0.05"}, {"runtime_limit", "60"}});
  EXPECT_EQ(limit_of(r, "|d_64 - target| / target"), 0.05);
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion04_ExactFloatingDuality) {
  const Report r = run_criterion(4, "resultant-duality",
                                 {{"pairs", "200"}, {"degree_max", "8"}, {"coeff_bound", "50"}, {"rel_tol", "1e-06"}});
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion05_HeightIdentities) {
  const Report r = run_criterion(5, "height-identities",
                                 {{"identity_tol", "1e-12"}, {"pairs", "100"}, {"mult_tol", "1e-06"}, {"chebyshev_tol", "1e-06"}});
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion06_SchurGrowth) {
  const Report r = run_criterion(6, "schur", {{"degree_min", "2"}, {"degree_max", "64"}, {"tolerance", "1e-06"}});
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion07_MassLaw) {
  const Report r = run_criterion(7, "mass-law",
                                 {{"levels", "2,4,6"}, {"mass_tol", "0.02"}, {"green_tol", "0.02"}, {"runtime_limit", "120"}});
  EXPECT_EQ(r.set, "disk 0 0 0.5");
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion08_LimitingInequality) {
  const Report r = run_criterion(8, "limiting",
                                 {{"family", "cyclotomic"}, {"family_max", "200"}, {"q", "-2 1"}, {"tail_tol", "0.05"},
                                  {"energy_tol", "0.05"}, {"energy_from", "100"}});
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion09_NorthcottStability) {
  const Report r = run_criterion(9, "northcott", {{"degree_max", "3"}, {"bounds", "50,100"}, {"runtime_limit", "600"}});
  EXPECT_NEAR(std::stod(r.parameters.at("threshold")), 0.5 * std::log(2.0) - 0.05, 1e-11);
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion10_PritskerConditions) {
  const Report r = run_criterion(10, "pritsker",
                                 {{"family", "chebyshev"}, {"family_max", "64"}, {"radius", "3"}, {"c3_tol", "0.05"},
                                  {"counter_radius", "1.5"}});
  EXPECT_TRUE(r.passed());
}

TEST(Acceptance, Criterion11_RemarkConvergence) {
  const Report r = run_criterion(11, "remark", {{"levels", "2,4,6"}, {"final_tol", "0.05"}});
  EXPECT_EQ(r.set, "disk 0 0 0.5");
  EXPECT_TRUE(r.passed());
}
