#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fringefit/model.hpp"

namespace fringefit {
namespace {

constexpr double kPi = std::numbers::pi;

SetupParams random_setup(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mean(0.0, 20.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SetupParams p;
  p.mean_o = mean(rng);
  p.mean_h = mean(rng);
  p.amplitude = unit(rng) * std::min(p.mean_o, p.mean_h);
  p.phase = kTwoPi * unit(rng);
  return p;
}

TEST(AuxShifts, EightPositions) {
  const AuxShiftGrid g = aux_shifts(8);
  ASSERT_EQ(g.count(), 8u);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(g[j], kTwoPi * j / 8.0);
  EXPECT_DOUBLE_EQ(g[1], kPi / 4);
  EXPECT_DOUBLE_EQ(g[7], 7 * kPi / 4);
}

TEST(AuxShifts, SmallGrids) {
  const AuxShiftGrid two = aux_shifts(2);
  EXPECT_EQ(two[0], 0.0);
  EXPECT_DOUBLE_EQ(two[1], kPi);
  const AuxShiftGrid four = aux_shifts(4);
  EXPECT_DOUBLE_EQ(four[1], kPi / 2);
  EXPECT_DOUBLE_EQ(four[2], kPi);
  EXPECT_DOUBLE_EQ(four[3], 3 * kPi / 2);
}

TEST(AuxShifts, RejectsDegenerateGrid) {
  EXPECT_THROW(aux_shifts(1), InvalidArgument);
  EXPECT_THROW(aux_shifts(0), InvalidArgument);
}

TEST(WrapPhase, CanonicalRange) {
  EXPECT_EQ(wrap_phase(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi / 2), 3 * kPi / 2);
  EXPECT_DOUBLE_EQ(wrap_phase(kTwoPi + 1.0), 1.0);
  EXPECT_LT(wrap_phase(-1e-18), kTwoPi);
  EXPECT_GE(wrap_phase(-1e-18), 0.0);
}

TEST(SetupParams, Validation) {
  EXPECT_TRUE((SetupParams{1, 1, 1, 0}).valid());
  EXPECT_FALSE((SetupParams{1, 0.5, 0.6, 0}).valid());
  EXPECT_FALSE((SetupParams{-1, 1, 0, 0}).valid());
  EXPECT_THROW((SetupParams{2, 1, 1.5, 0}).validate(), InvalidArgument);
}

TEST(FourPortParams, Validation) {
  EXPECT_NO_THROW((FourPortParams{4, 1, 0, 1}).validate());
  EXPECT_THROW((FourPortParams{4, 1.1, 0, 1}).validate(), InvalidArgument);
  EXPECT_THROW((FourPortParams{4, 0.5, 0, 0}).validate(), InvalidArgument);
  EXPECT_THROW((FourPortParams{-1, 0.5, 0, 1}).validate(), InvalidArgument);
}

TEST(FringeSample, LengthMustMatchGrid) {
  EXPECT_THROW(FringeSample({1, 2, 3}, {1, 2}, AuxShiftGrid(3)), InvalidArgument);
  EXPECT_THROW(FringeSample({1, 2}, {1, 2}, AuxShiftGrid(3)), InvalidArgument);
}

TEST(MeanTwoPort, ReferenceSetupRange) {
  const auto m = mean_two_port({2.21, 6.33, 1.03, 4.83}, AuxShiftGrid(8));
  const auto [lo, hi] = std::minmax_element(m.mean_o.begin(), m.mean_o.end());
  EXPECT_GE(*lo, 1.18);
  EXPECT_LE(*hi, 3.24);
  EXPECT_LT(*lo, 1.20);
  EXPECT_GT(*hi, 3.22);
  for (std::size_t j = 0; j < 8; ++j)
    EXPECT_NEAR(m.mean_o[j] + m.mean_h[j], 2.21 + 6.33, 1e-12);
}

TEST(MeanTwoPort, ZeroAmplitudeIsFlat) {
  const auto m = mean_two_port({1, 1, 0, 2.5}, AuxShiftGrid(4));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(m.mean_o[j], 1.0);
    EXPECT_EQ(m.mean_h[j], 1.0);
  }
}

TEST(MeanTwoPort, BoundaryAmplitude) {
  const auto m = mean_two_port({1, 1, 1, 0}, AuxShiftGrid(2));
  EXPECT_DOUBLE_EQ(m.mean_o[0], 2.0);
  EXPECT_NEAR(m.mean_o[1], 0.0, 1e-15);
  EXPECT_NEAR(m.mean_h[0], 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(m.mean_h[1], 2.0);
  EXPECT_GE(m.mean_o[1], 0.0);
}

TEST(MeanTwoPort, Properties) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const SetupParams p = random_setup(rng);
    const std::size_t n = 2 + trial % 15;
    const AuxShiftGrid grid(n);
    const auto m = mean_two_port(p, grid);

    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_GE(m.mean_o[j], 0.0);
      EXPECT_GE(m.mean_h[j], 0.0);
      total += m.mean_o[j] + m.mean_h[j];
    }
    EXPECT_NEAR(total, n * (p.mean_o + p.mean_h), 1e-9);

    SetupParams shifted = p;
    shifted.phase += kTwoPi;
    const auto periodic = mean_two_port(shifted, grid);
    for (std::size_t j = 0; j < n; ++j)
      EXPECT_NEAR(periodic.mean_o[j], m.mean_o[j], 1e-12);

    // theta + delta_1 reads the fringe one position further on
    SetupParams rotated = p;
    rotated.phase += grid[1];
    const auto r = mean_two_port(rotated, grid);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_NEAR(r.mean_o[j], m.mean_o[(j + 1) % n], 1e-12);
      EXPECT_NEAR(r.mean_h[j], m.mean_h[(j + 1) % n], 1e-12);
    }
  }
}

TEST(MeanFourPort, Examples) {
  auto m = mean_four_port({4, 1, 0, 1});
  EXPECT_DOUBLE_EQ(m[0], 0.0);
  EXPECT_DOUBLE_EQ(m[1], 4.0);
  EXPECT_DOUBLE_EQ(m[2], 2.0);
  EXPECT_DOUBLE_EQ(m[3], 2.0);

  m = mean_four_port({4, 0, 1.234, 1});
  for (double v : m) EXPECT_DOUBLE_EQ(v, 2.0);

  m = mean_four_port({2, 1, kPi / 2, 1});
  EXPECT_NEAR(m[0], 1.0, 1e-15);
  EXPECT_NEAR(m[1], 1.0, 1e-15);
  EXPECT_NEAR(m[2], 0.0, 1e-15);
  EXPECT_NEAR(m[3], 2.0, 1e-15);
}

TEST(MeanFourPort, SumsToTwiceIntensity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const FourPortParams p{30 * u(rng), u(rng), kTwoPi * u(rng), 1.0};
    const auto m = mean_four_port(p);
    EXPECT_NEAR(m[0] + m[1] + m[2] + m[3], 2 * p.total_intensity, 1e-12);
    for (double v : m) EXPECT_GE(v, 0.0);
  }
}

TEST(PhaseEstimate, NormalizedVisibility) {
  PhaseEstimate e;
  e.mean_o = 2.0;
  e.amplitude = 0.5;
  EXPECT_DOUBLE_EQ(*e.normalized_visibility(), 0.25);
  e.mean_o = 0.0;
  EXPECT_FALSE(e.normalized_visibility().has_value());
}

}  // namespace
}  // namespace fringefit
