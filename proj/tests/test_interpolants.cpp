#include "nsda/errors.hpp"
#include "nsda/interpolants.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace nsda;
using namespace nsda::testing;

namespace {

PhysicalVelocity constant_field(const GridPtr& g, double a, double b) {
  PhysicalVelocity p(g);
  p[0].setConstant(a);
  p[1].setConstant(b);
  return p;
}

}  // namespace

TEST(FiniteVolume, ConstantsAreFixedPointsExactly) {
  const GridPtr g = grid(24);
  for (int cells : {1, 2, 3, 4, 6, 8, 12, 24}) {
    const PhysicalVelocity c = constant_field(g, 0.1, -7.3);
    const PhysicalVelocity avg = cell_average(c, cells);
    EXPECT_TRUE((avg[0] == c[0]).all() && (avg[1] == c[1]).all()) << cells;
  }
  SpectralVelocity mean(g);
  mean[0](0, 0) = 0.25;
  mean[1](0, 0) = -1.5;
  const SpectralVelocity out = apply_interpolant(FiniteVolume{4}, mean);
  EXPECT_LT(max_abs(out - mean), 1e-15);
}

TEST(FiniteVolume, SingleCellKillsSine) {
  const GridPtr g = grid(16);
  const SpectralVelocity f = sample(g, [](double x, double) { return std::sin(x); }, [](double, double) { return 0.0; });
  EXPECT_LT(max_abs(apply_interpolant(FiniteVolume{1}, f)), 1e-16);
}

TEST(FiniteVolume, TwoCellsAverageSineHalves) {
  // Grid-point averages of sin over a half period: sum_{i<M/2} sin(2πi/M) / (M/2)
  // = (2/M) cot(π/M), which tends to 2/π as M grows.
  for (int m : {16, 64, 256}) {
    const GridPtr g = grid(m);
    const SpectralVelocity f = sample(g, [](double x, double) { return std::sin(x); }, [](double, double) { return 0.0; });
    const PhysicalVelocity avg = to_physical(apply_interpolant(FiniteVolume{2}, f));
    const double expected = 2.0 / m / std::tan(std::numbers::pi / m);
    EXPECT_NEAR(avg[0](0, 0), expected, 1e-13);
    EXPECT_NEAR(avg[0](m / 2 - 1, m - 1), expected, 1e-13);
    EXPECT_NEAR(avg[0](m / 2, 3), -expected, 1e-13);
    EXPECT_LT(avg[1].abs().maxCoeff(), 1e-15);
    EXPECT_NEAR(expected, 2.0 / std::numbers::pi, 3.0 / (m * m));
  }
}

TEST(FiniteVolume, SymmetricOperator) {
  const GridPtr g = grid(32, 3.0);
  Rng rng(40);
  for (int cells : {2, 4, 8, 16}) {
    for (int n = 0; n < 10; ++n) {
      const SpectralVelocity phi = random_raw(g, rng), psi = random_raw(g, rng);
      const double lhs = inner(apply_interpolant(FiniteVolume{cells}, phi), psi);
      const double rhs = inner(phi, apply_interpolant(FiniteVolume{cells}, psi));
      EXPECT_LE(std::abs(lhs - rhs), 1e-10 * sobolev_norm(phi, 1.0) * sobolev_norm(psi, 1.0));
    }
  }
}

TEST(FiniteVolume, Idempotence) {
  const GridPtr g = grid(32);
  Rng rng(41);
  const SpectralVelocity f = random_raw(g, rng);
  const PhysicalVelocity once = cell_average(to_physical(f), 8);
  const PhysicalVelocity twice = cell_average(once, 8);
  EXPECT_TRUE((once[0] == twice[0]).all() && (once[1] == twice[1]).all());
  const SpectralVelocity a = apply_interpolant(FiniteVolume{8}, f);
  const SpectralVelocity b = apply_interpolant(FiniteVolume{8}, a);
  EXPECT_LT(max_abs(b - a), 1e-14 * max_abs(a));
}

TEST(FiniteVolume, MisalignedCellsRejected) {
  const GridPtr g = grid(32);
  EXPECT_THROW(apply_interpolant(FiniteVolume{3}, SpectralVelocity(g)), ConfigError);
  EXPECT_THROW(apply_interpolant(FiniteVolume{0}, SpectralVelocity(g)), ConfigError);
}

TEST(FourierShell, IdentityOnItsRange) {
  const GridPtr g = grid(32);
  Rng rng(5);
  RandomFieldShape inside;
  inside.max_norm_sq = 9;
  const SpectralVelocity f = random_field<double>(g, rng, inside);
  EXPECT_TRUE(apply_interpolant(FourierShell{3.0}, f) == f);
  EXPECT_THROW(apply_interpolant(FourierShell{11.0}, f), ConfigError);
  EXPECT_NEAR(resolution(FourierShell{4.0}, *g), 1.0 / std::sqrt(17.0), 1e-15);
  EXPECT_NEAR(resolution(FiniteVolume{8}, *g), kTwoPi / 8, 1e-15);
}

TEST(Estimators, FieldInsideFourierShellHasNoDefect) {
  const GridPtr g = grid(32);
  Rng rng(6);
  RandomFieldShape inside;
  inside.solenoidal = false;
  inside.max_norm_sq = 16;
  const SpectralVelocity phi = random_field<double>(g, rng, inside);
  const SpectralVelocity defect = phi - apply_interpolant(FourierShell{4.0}, phi);
  EXPECT_EQ(sobolev_norm(defect, 0.0), 0.0);
  EXPECT_EQ(sobolev_norm(defect, -1.0), 0.0);
  EXPECT_GT(estimate_p1(FourierShell{4.0}, g, 4, 1).estimate, 0.0);
}

TEST(Estimators, P3ZeroForNestedFourierShell) {
  const GridPtr g = grid(32);
  const auto rows = estimate_p3(FourierShell{2.0}, g, {make_cutoff(*g, 4.0), make_cutoff(*g, 6.0)}, 5, 3);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.estimate, 0.0);
    EXPECT_EQ(r.constant_name, "c0_tilde");
  }
  EXPECT_THROW(estimate_p3(FourierShell{2.0}, g, {make_cutoff(*g, 10.0)}, 5, 3), ConfigError);
}

TEST(Estimators, FiniteVolumeConstantsStableUnderRefinement) {
  const GridPtr g = grid(64);
  const double p1_8 = estimate_p1(FiniteVolume{8}, g, 20, 7).estimate;
  const double p1_16 = estimate_p1(FiniteVolume{16}, g, 20, 7).estimate;
  const double p2_8 = estimate_p2(FiniteVolume{8}, g, 20, 7).estimate;
  const double p2_16 = estimate_p2(FiniteVolume{16}, g, 20, 7).estimate;
  EXPECT_GT(p1_8, 0.0);
  EXPECT_GT(p2_8, 0.0);
  EXPECT_LT(std::max(p1_8, p1_16) / std::min(p1_8, p1_16), 2.0);
  EXPECT_LT(std::max(p2_8, p2_16) / std::min(p2_8, p2_16), 2.0);
}

TEST(Estimators, DeterministicAndRecorded) {
  const GridPtr g = grid(32);
  const PropertyEstimate a = estimate_p2(FiniteVolume{4}, g, 6, 99);
  const PropertyEstimate b = estimate_p2(FiniteVolume{4}, g, 6, 99);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.constant_name, "c_minus1");
  EXPECT_EQ(a.sample_count, 6);
  EXPECT_EQ(a.seed, 99u);
  EXPECT_DOUBLE_EQ(a.param, kTwoPi / 4);
  EXPECT_THROW(estimate_p1(FiniteVolume{4}, g, 0, 1), ConfigError);
}

TEST(Estimators, CsvHeader) {
  std::ostringstream os;
  write_estimates_csv(os, {estimate_p1(FiniteVolume{4}, grid(16), 2, 1)});
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "constant,variant,param,estimate,samples,seed");
}
