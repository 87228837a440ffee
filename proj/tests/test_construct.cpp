#include <gtest/gtest.h>

#include <map>
#include <numbers>

#include "capheight/construct.hpp"
#include "capheight/error.hpp"
#include "capheight/measures.hpp"

using namespace capheight;

namespace {

// states are reused across tests; each bisection costs a few hundred solves
const ConstructionState& disk_state(int n) {
  static std::map<int, ConstructionState> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, bisect_to_capacity_one(make_green_model(make_disk(0, 0.5)), n)).first;
  return it->second;
}

}  // namespace

TEST(LevelArc, FullCircleAtThetaOne) {
  const GreenModel m = make_green_model(make_disk(0, 0.5));
  const Arc a = build_level_arc(m, 2, 1.0, 128);
  EXPECT_TRUE(a.closed);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a.point(i)), 0.5 * std::exp(2.0), 1e-6);
}

TEST(LevelArc, HalfArcIsHalfTheCircumference) {
  const GreenModel m = make_green_model(make_disk(0, 0.5));
  const double R = 0.5 * std::exp(2.0);
  const Arc a = build_level_arc(m, 2, 0.5, 256);
  EXPECT_FALSE(a.closed);
  EXPECT_NEAR(a.length(), std::numbers::pi * R, 0.01 * R);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a.point(i)), R, 1e-6);
  EXPECT_TRUE(check_conjugation_symmetry(SetDescriptor(a)));
}

TEST(LevelArc, NestedAndMonotoneInTheta) {
  const SetDescriptor sigma = make_disk(0, 0.5);
  const GreenModel m = make_green_model(sigma);
  double prev_cap = 0, prev_len = 0;
  for (int k = 1; k <= 10; ++k) {
    const Arc a = build_level_arc(m, 1, 0.1 * k, 128);
    const double len = a.length();
    EXPECT_GE(len, prev_len - 1e-9);
    const double cap = joint_model(sigma, a, 300).capacity();
    EXPECT_GE(cap, prev_cap - 1e-6) << "theta=" << 0.1 * k;
    prev_cap = cap;
    prev_len = len;
  }
  EXPECT_THROW(build_level_arc(m, 1, 0.0, 64), Error);
  EXPECT_THROW(build_level_arc(m, 1, 1.5, 64), Error);
}

TEST(Bisection, DiskLevelTwo) {
  const ConstructionState& s = disk_state(2);
  EXPECT_LE(std::abs(s.joint_model.robin_constant), 1e-3);
  EXPECT_GT(s.theta, 0.0);
  EXPECT_LT(s.theta, 1.0);
  EXPECT_NEAR(s.predicted_mass, 1 + std::log(0.5) / 2, 1e-12);
  EXPECT_TRUE(check_conjugation_symmetry(SetDescriptor(s.arc)));
}

TEST(Bisection, IntervalLevelOne) {
  const ConstructionState s = bisect_to_capacity_one(make_green_model(make_interval(-1, 1)), 1);
  EXPECT_LE(std::abs(s.joint_model.robin_constant), 1e-3);
}

TEST(Bisection, Errors) {
  try {
    bisect_to_capacity_one(make_green_model(make_disk(0, 0.01)), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LevelTooLow);
    // 0.01 e^n > 1 first at n = 5
    EXPECT_NE(std::string(e.what()).find('5'), std::string::npos) << e.what();
  }
  EXPECT_EQ(smallest_usable_level(0.01), 5);
  try {
    bisect_to_capacity_one(make_green_model(make_disk(0, 2)), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolation);
  }
}

TEST(MassLaw, DiskLevels) {
  const GreenModel sigma = make_green_model(make_disk(0, 0.5));
  for (int n : {2, 6}) {
    const MassLaw m = mass_law_check(disk_state(n), sigma);
    EXPECT_NEAR(m.predicted, 1 + std::log(0.5) / n, 1e-12);
    EXPECT_LE(m.gap, 0.02) << n;
    EXPECT_NEAR(m.green_integral, -std::log(0.5), 0.02) << n;
  }
  EXPECT_NEAR(mass_law_check(disk_state(6), sigma).predicted, 0.8845, 1e-4);
}

TEST(MassLaw, IntervalMatrix) {
  const GreenModel sigma = make_green_model(make_interval(-1, 1));
  const double eps = 1e-3;
  for (int n : {1, 2, 3, 6}) {
    const ConstructionState s = bisect_to_capacity_one(sigma, n, eps);
    const MassLaw m = mass_law_check(s, sigma);
    EXPECT_LE(m.gap, std::max(0.02, 5 * eps)) << n;
    EXPECT_NEAR(m.green_integral, std::log(2.0), 0.02) << n;
  }
}

TEST(MassLaw, ThetaShrinksWithLevel) {
  double prev = 1.0;
  for (int n : {2, 4, 6}) {
    EXPECT_LT(disk_state(n).theta, prev) << n;
    prev = disk_state(n).theta;
  }
}

TEST(Remark, DiscrepancyDecreases) {
  const GreenModel sigma = make_green_model(make_disk(0, 0.5));
  const std::vector<ConstructionState> states = {disk_state(2), disk_state(4), disk_state(6)};
  const auto rows = remark_convergence_check(states, sigma, probe_ring(sigma.set, 64));
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].discrepancy, rows[i - 1].discrepancy);
    EXPECT_LT(rows[i].arc_mass, rows[i - 1].arc_mass);
  }
  for (const auto& r : rows) EXPECT_NEAR(r.arc_mass, -std::log(0.5) / r.level, 0.02);
}

TEST(Remark, SingleStateIsTrivial) {
  const GreenModel sigma = make_green_model(make_disk(0, 0.5));
  const auto rows = remark_convergence_check({disk_state(2)}, sigma, probe_ring(sigma.set, 16));
  EXPECT_LE(rows.size(), 1u);
}
