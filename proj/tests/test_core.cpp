#include <gtest/gtest.h>

#include <cmath>

#include "nqw/core.hpp"
#include "nqw/error.hpp"

using namespace nqw;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

Mat2 power(const Mat2& m, int n) {
  Mat2 r = Mat2::identity();
  for (int i = 0; i < n; ++i) r = r * m;
  return r;
}

}  // namespace

TEST(Coins, ExperimentalCoinEntries) {
  const Mat2 c = coin_experimental().matrix();
  const Mat2 expected{{cplx{kH}, cplx{kH}, cplx{-kH}, cplx{kH}}};
  EXPECT_LT(max_abs_diff(c, expected), 1e-15);
  EXPECT_LT(unitarity_defect(c), 1e-15);
}

TEST(Coins, ExperimentalFourthPowerIsMinusIdentity) {
  const Mat2 c = coin_experimental().matrix();
  EXPECT_LT(max_abs_diff(power(c, 4), -1.0 * Mat2::identity()), 1e-14);
  EXPECT_LT(max_abs_diff(power(c, 8), Mat2::identity()), 1e-14);
}

TEST(Coins, HadamardIsInvolution) {
  const Mat2 h = coin_hadamard().matrix();
  EXPECT_LT(max_abs_diff(h, Mat2{{cplx{kH}, cplx{kH}, cplx{kH}, cplx{-kH}}}), 1e-15);
  EXPECT_LT(max_abs_diff(h * h, Mat2::identity()), 1e-15);
}

TEST(Coins, HadamardIsSigmaZTimesExperimental) {
  EXPECT_LT(max_abs_diff(pauli_z() * coin_experimental().matrix(), coin_hadamard().matrix()), 1e-15);
}

TEST(Coins, RotationIsUnitaryForAnyAngle) {
  for (double a : {-3.0, -0.4, 0.0, 0.7, 2.5, 100.0})
    EXPECT_LT(unitarity_defect(coin_rotation(a).matrix()), 1e-15) << a;
  EXPECT_LT(max_abs_diff(coin_rotation(kPi / 4).matrix(), coin_experimental().matrix()), 1e-15);
}

TEST(Coins, RejectsNonUnitaryAndNonFinite) {
  EXPECT_THROW(CoinOp(Mat2::diag(1.0, 2.0)), Error);
  EXPECT_THROW(CoinOp(Mat2::diag(cplx{NAN}, 1.0)), Error);
  try {
    CoinOp(Mat2::diag(1.0, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(MomentumShift, SpecialAngles) {
  EXPECT_LT(max_abs_diff(momentum_shift_op(0.0).matrix(), Mat2::identity()), 1e-15);
  EXPECT_LT(max_abs_diff(momentum_shift_op(kPi).matrix(), -1.0 * Mat2::identity()), 1e-15);
  EXPECT_LT(max_abs_diff(momentum_shift_op(-kPi / 2).matrix(), cplx{0.0, -1.0} * pauli_z()), 1e-15);
  EXPECT_THROW(momentum_shift_op(INFINITY), Error);
}

TEST(ShiftSymbol, NodeValues) {
  const LatticeGrid grid(16);
  const MatrixField s0 = shift_symbol(grid, 0.0);
  // p = 0 sits at index M/2, p = pi/2 at 3M/4.
  EXPECT_LT(max_abs_diff(s0.values[8], Mat2::identity()), 1e-15);
  EXPECT_LT(max_abs_diff(s0.values[12], Mat2::diag(cplx{0, 1}, cplx{0, -1})), 1e-15);
}

TEST(ShiftSymbol, OffsetEqualsPhaseTimesUnshifted) {
  const LatticeGrid grid(32);
  for (double theta : {-2.0, -0.3, 0.9, 3.1}) {
    const MatrixField shifted = shift_symbol(grid, theta);
    const MatrixField plain = shift_symbol(grid, 0.0);
    const Mat2 r = momentum_shift_op(theta).matrix();
    for (std::size_t j = 0; j < grid.size(); ++j)
      EXPECT_LT(max_abs_diff(shifted.values[j], r * plain.values[j]), 1e-15);
  }
}

TEST(LatticeGrid, SitesAndIndices) {
  const LatticeGrid grid(8);
  EXPECT_EQ(grid.min_site(), -4);
  EXPECT_EQ(grid.max_site(), 3);
  EXPECT_EQ(grid.site(0), -4);
  EXPECT_EQ(grid.index(0), 4u);
  EXPECT_EQ(grid.index(4), 0u);   // wraps to -4
  EXPECT_EQ(grid.index(-5), 7u);  // wraps to 3
  EXPECT_DOUBLE_EQ(grid.momentum(0), -kPi);
  EXPECT_DOUBLE_EQ(grid.momentum(4), 0.0);
  EXPECT_THROW(LatticeGrid(7), Error);
  EXPECT_THROW(LatticeGrid(0), Error);
}

TEST(LatticeGrid, SizingRuleIsPowerOfTwoWithMargin) {
  const LatticeGrid g = LatticeGrid::for_walk(150, 8.0);
  EXPECT_EQ(g.size(), 512u);
  EXPECT_GE(static_cast<double>(g.size()), 2.0 * (150 + 6 * 8));
  EXPECT_EQ(LatticeGrid::for_walk(0, 0.0).size(), 64u);
}

TEST(WrapAngle, IntoHalfOpenRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_NEAR(wrap_angle(-kPi / 2), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(wrap_angle(2 * kPi + 0.25), 0.25, 1e-14);
  EXPECT_LT(wrap_angle(2 * kPi), 2 * kPi);
}

TEST(Density, NormalizesSpinor) {
  const Mat2 rho = density(Spinor{cplx{2.0}, cplx{0.0, 2.0}});
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
  EXPECT_NEAR(rho(0, 1).imag(), -0.5, 1e-15);
  EXPECT_THROW(density(Spinor{}), Error);
}
