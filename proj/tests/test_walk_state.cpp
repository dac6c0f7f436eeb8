#include <gtest/gtest.h>

#include <random>

#include "nqw/error.hpp"
#include "nqw/walk_state.hpp"

using namespace nqw;

TEST(WalkState, OneHotTransformsToPlaneWave) {
  const LatticeGrid grid(16);
  const Spinor coin{cplx{0.6}, cplx{0.0, 0.8}};
  const WalkState mom = WalkState::one_hot(grid, 3, coin).to_momentum();
  ASSERT_EQ(mom.representation(), Representation::MomentumSide);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const cplx phase = std::polar(1.0, 3.0 * grid.momentum(j));
    EXPECT_LT(std::abs(mom.amplitudes()[j].plus - phase * coin.plus), 1e-14);
    EXPECT_LT(std::abs(mom.amplitudes()[j].minus - phase * coin.minus), 1e-14);
  }
}

TEST(WalkState, RoundTripAndNormAgree) {
  std::mt19937_64 rng(5);
  const LatticeGrid grid(64);
  const WalkState pos = random_state(grid, 20, rng);
  const WalkState mom = pos.to_momentum();
  EXPECT_NEAR(pos.norm_squared(), 1.0, 1e-14);
  EXPECT_NEAR(mom.norm_squared(), 1.0, 1e-13);
  EXPECT_LT(max_amplitude_diff(mom.to_position(), pos), 1e-14);
  EXPECT_EQ(mom.to_position().basis(), pos.basis());
}

TEST(WalkState, SiteAccessAndBasisTag) {
  const LatticeGrid grid(8);
  const WalkState s = WalkState::one_hot(grid, -2, Spinor::down(), BasisTag::AlphaBasis);
  EXPECT_EQ(s.at_site(-2).minus, cplx{1.0});
  EXPECT_EQ(s.basis(), BasisTag::AlphaBasis);
  EXPECT_EQ(s.with_basis(BasisTag::OrthonormalBasis).basis(), BasisTag::OrthonormalBasis);
  EXPECT_THROW(s.to_momentum().at_site(0), Error);
}

TEST(WalkState, RejectsWrongLength) {
  EXPECT_THROW(WalkState(LatticeGrid(8), BasisTag::OrthonormalBasis, Representation::PositionSide,
                         std::vector<Spinor>(6)),
               Error);
}

TEST(WalkState, NormalizedRejectsZeroState) {
  const WalkState zero(LatticeGrid(4), BasisTag::OrthonormalBasis, Representation::PositionSide,
                       std::vector<Spinor>(4));
  EXPECT_THROW(zero.normalized(), Error);
}

TEST(RandomUnitary, IsUnitary) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) EXPECT_LT(unitarity_defect(random_unitary(rng)), 1e-14);
}
