#include "nqw/validate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "nqw/error.hpp"
#include "nqw/evolution.hpp"
#include "nqw/kernels.hpp"
#include "nqw/overlap.hpp"
#include "nqw/spectral.hpp"

namespace nqw {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

CheckResult timed(const std::string& name, const std::function<CheckResult()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CheckResult verdict(double worst, double tol, const std::string& what) {
  return {"", worst < tol, what + " " + sci(worst) + " (tol " + sci(tol) + ")", 0.0};
}

// Column-major copy of one coin component of a position-side state.
Eigen::VectorXcd component(const WalkState& pos, int s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(pos.grid().size()));
  for (std::size_t i = 0; i < pos.grid().size(); ++i)
    v(static_cast<Eigen::Index>(i)) = s == 0 ? pos.amplitudes()[i].plus : pos.amplitudes()[i].minus;
  return v;
}

Eigen::MatrixXd dense_power(const Eigen::MatrixXd& g, double exponent) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const Eigen::VectorXd lam = es.eigenvalues().array().max(0.0).pow(exponent);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

CheckResult check_shift_gram_commute() {
  return timed("[S,G]=0 commutation", [] {
    const LatticeGrid grid(64);
    const auto m = static_cast<Eigen::Index>(grid.size());
    double worst = 0.0;
    for (double sigma : {0.5, 1.5, 4.0}) {
      const auto gram = gram_dense(OverlapModel::gaussian(sigma), grid, true);
      Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
      Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
          big(2 * i, 2 * j) = (*gram.dense)(i, j);
          big(2 * i + 1, 2 * j + 1) = (*gram.dense)(i, j);
        }
        shift(2 * ((i + 1) % m), 2 * i) = std::polar(1.0, 0.3);
        shift(2 * ((i + m - 1) % m) + 1, 2 * i + 1) = std::polar(1.0, -0.3);
      }
      worst = std::max(worst, (shift * big - big * shift).cwiseAbs().maxCoeff());
    }
    return verdict(worst, 1e-12, "max |SG - GS|");
  });
}

CheckResult check_gram_roundtrip(std::uint64_t seed) {
  return timed("Gamma^{+-1/2} round-trip", [seed] {
    std::mt19937_64 rng(seed);
    const LatticeGrid grid(64);
    double round = 0.0, dense = 0.0;
    for (double sigma : {0.5, 1.0, 1.5, 2.0}) {
      const auto gram = gram_dense(OverlapModel::gaussian(sigma), grid, true);
      const Eigen::MatrixXd half = dense_power(*gram.dense, 0.5);
      const Eigen::MatrixXd inv_half = dense_power(*gram.dense, -0.5);
      for (int draw = 0; draw < 5; ++draw) {
        const WalkState c = random_state(grid, 20, rng, BasisTag::AlphaBasis);
        const WalkState e = gram_power_apply(gram, 0.5, c).state;
        const WalkState back = gram_power_apply(gram, -0.5, e).state;
        round = std::max(round, max_amplitude_diff(back, c));
        for (int s = 0; s < 2; ++s) {
          dense = std::max(dense, (half * component(c, s) - component(e, s)).cwiseAbs().maxCoeff());
          dense = std::max(dense,
                           (inv_half * component(e, s) - component(back, s)).cwiseAbs().maxCoeff());
        }
      }
    }
    CheckResult r = verdict(std::max(round, dense), 1e-10, "round-trip / dense deviation");
    r.detail = "round-trip " + sci(round) + ", dense " + sci(dense) + " (tol 1e-10)";
    return r;
  });
}

CheckResult check_dual_basis() {
  return timed("dual-basis delta_xy", [] {
    double symbol_route = 0.0, dense_route = 0.0, ortho = 0.0;
    for (std::size_t m : {16u, 32u, 64u}) {
      const LatticeGrid grid(m);
      const auto n = static_cast<Eigen::Index>(m);
      for (double sigma : {0.5, 1.0, 2.0}) {
        const auto gram = gram_dense(OverlapModel::gaussian(sigma), grid, true);
        const Eigen::MatrixXd& g = *gram.dense;
        // Columns: dual coefficients Gamma^{-1} e_x and orthonormal vectors Gamma^{-1/2} e_x.
        Eigen::MatrixXd dual(n, n), half(n, n);
        for (Eigen::Index x = 0; x < n; ++x) {
          const WalkState one = WalkState::one_hot(grid, grid.site(static_cast<std::size_t>(x)),
                                                   Spinor::up(), BasisTag::AlphaBasis);
          const WalkState d = gram_power_apply(gram, -1.0, one).state;
          const WalkState h = gram_power_apply(gram, -0.5, one).state;
          dual.col(x) = component(d, 0).real();
          half.col(x) = component(h, 0).real();
        }
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
        symbol_route = std::max(symbol_route, (dual.transpose() * g - id).cwiseAbs().maxCoeff());
        ortho = std::max(ortho, (half.transpose() * g * half - id).cwiseAbs().maxCoeff());
        const Eigen::MatrixXd dense_dual = g.ldlt().solve(id);
        dense_route = std::max(dense_route, (dense_dual.transpose() * g - id).cwiseAbs().maxCoeff());
      }
    }
    const double worst = std::max({symbol_route, dense_route, ortho});
    return CheckResult{"", worst < 1e-10,
                       "symbol " + sci(symbol_route) + ", dense " + sci(dense_route) +
                           ", orthonormal " + sci(ortho) + " (tol 1e-10)",
                       0.0};
  });
}

CheckResult check_backend_equivalence(std::uint64_t seed) {
  return timed("position/momentum backend equivalence", [seed] {
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double worst = 0.0;
    for (std::size_t m : {16u, 64u, 256u}) {
      const LatticeGrid grid(m);
      for (int draw = 0; draw < 4; ++draw) {
        const CoinOp coin(random_unitary(rng));
        const double theta = angle(rng);
        WalkState pos = random_state(grid, static_cast<long>(m / 4), rng);
        WalkState mom = pos.to_momentum();
        for (int t = 1; t <= 50; ++t) {
          pos = step(pos, coin, theta);
          mom = step(mom, coin, theta);
          worst = std::max(worst, max_abs_diff(position_distribution(pos), position_distribution(mom)));
        }
      }
    }
    return verdict(worst, 1e-10, "sup |P_pos - P_mom|");
  });
}

CheckResult check_causality(std::uint64_t seed) {
  return timed("causality |v| <= 1", [seed] {
    std::mt19937_64 rng(seed + 2);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const LatticeGrid grid(1024);
    double worst = 0.0;
    std::vector<CoinOp> coins{coin_hadamard(), coin_experimental()};
    for (int i = 0; i < 10; ++i) coins.emplace_back(random_unitary(rng));
    for (const auto& coin : coins) {
      const SpectralData s = analyze(coin, grid, angle(rng));
      for (const auto& branch : s.velocity)
        for (double v : branch) worst = std::max(worst, std::abs(v));
    }
    return CheckResult{"", worst <= 1.0 + 1e-12, "max |v| " + sci(worst) + " (bound 1 + 1e-12)", 0.0};
  });
}

CheckResult check_gauge_equivalence() {
  return timed("gauge equivalence C_E(theta=-pi/2) = C_H", [] {
    const std::size_t steps = 150;
    const LatticeGrid grid = LatticeGrid::for_walk(steps, 8.0);
    double worst = 0.0;
    for (double sigma : {0.0, 1.5, 8.0}) {
      const WalkState psi = initial_state(OverlapModel::gaussian(sigma), grid, Spinor::up());
      const auto e = evolve(psi, coin_experimental(), ShiftSchedule::constant(-kPi / 2), steps);
      const auto h = evolve(psi, coin_hadamard(), ShiftSchedule{}, steps);
      for (std::size_t i = 0; i < e.rows.size(); ++i)
        worst = std::max(worst, max_abs_diff(e.rows[i].probability, h.rows[i].probability));
    }
    return verdict(worst, 1e-10, "sup |P_E - P_H|");
  });
}

CheckResult check_orthogonal_degeneracy() {
  return timed("sigma=0 coin degeneracy", [] {
    const std::size_t steps = 150;
    const LatticeGrid grid = LatticeGrid::for_walk(steps, 0.0);
    const WalkState psi = WalkState::one_hot(grid, 0, Spinor::up());
    const auto e = evolve(psi, coin_experimental(), ShiftSchedule{}, steps);
    const auto h = evolve(psi, coin_hadamard(), ShiftSchedule{}, steps);
    double worst = 0.0;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      worst = std::max(worst, max_abs_diff(e.rows[i].probability, h.rows[i].probability));
    return verdict(worst, 1e-10, "sup |P_E - P_H|");
  });
}

CheckResult check_alpha_pipeline(std::uint64_t seed) {
  return timed("alpha-basis dense pipeline = orthonormal momentum pipeline", [seed] {
    std::mt19937_64 rng(seed + 3);
    const LatticeGrid grid(64);
    double worst = 0.0, drift = 0.0;
    EvolveOptions opts;
    opts.tail_guard = false;
    for (double sigma : {0.5, 1.5, 4.0}) {
      const auto gram = gram_dense(OverlapModel::gaussian(sigma), grid, true);
      for (int draw = 0; draw < 20; ++draw) {
        const CoinOp coin(random_unitary(rng));
        WalkState c = draw % 2 == 0
                          ? WalkState::one_hot(grid, 0, random_spinor(rng), BasisTag::AlphaBasis)
                          : random_state(grid, 3, rng, BasisTag::AlphaBasis);
        const WalkState psi0 = gram_power_apply(gram, 1.0, c).state.normalized();
        const auto traj = evolve(psi0, coin, ShiftSchedule{}, 20, opts);
        const double norm0 = dense_alpha_normalization(c, gram);
        for (std::size_t t = 0; t <= 20; ++t) {
          if (t > 0) c = step(c, coin, 0.0);
          worst = std::max(worst, max_abs_diff(dense_alpha_distribution(c, gram), traj.rows[t].probability));
          drift = std::max(drift, std::abs(dense_alpha_normalization(c, gram) - norm0));
        }
      }
    }
    return CheckResult{"", worst < 1e-8 && drift < 1e-10,
                       "sup |P_dense - P_mom| " + sci(worst) + " (tol 1e-8), normalization drift " +
                           sci(drift) + " (tol 1e-10)",
                       0.0};
  });
}

CheckResult check_unitarity(std::uint64_t seed) {
  return timed("unitarity over 1000 steps", [seed] {
    std::mt19937_64 rng(seed + 4);
    const LatticeGrid grid(256);
    const CoinOp coin(random_unitary(rng));
    WalkState mom = random_state(grid, 30, rng).to_momentum();
    WalkState pos = mom.to_position();
    const Propagator prop(grid);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      prop.apply(mom.amplitudes(), coin, 0.7);
      pos = step(pos, coin, 0.7);
      worst = std::max({worst, std::abs(mom.norm_squared() - 1.0), std::abs(pos.norm_squared() - 1.0)});
    }
    return verdict(worst, 1e-12, "max |norm - 1|");
  });
}

CheckResult check_simd_kernels(std::uint64_t seed) {
  return timed("SIMD kernels = scalar reference", [seed] {
    std::mt19937_64 rng(seed + 5);
    std::normal_distribution<double> normal;
    const std::size_t n = 1001;
    std::vector<Spinor> amps(n);
    std::vector<cplx> phase(n);
    std::vector<double> factor(n);
    for (std::size_t j = 0; j < n; ++j) {
      amps[j] = {cplx{normal(rng), normal(rng)}, cplx{normal(rng), normal(rng)}};
      phase[j] = std::polar(1.0, normal(rng));
      factor[j] = normal(rng);
    }
    const Mat2 coin = random_unitary(rng);
    const auto& ref = kernels::scalar();
    std::vector<Spinor> ref_step = amps, ref_scaled = amps;
    std::vector<double> ref_prob(n);
    kernels::symbol_step(ref_step, coin, phase, ref);
    kernels::scale(ref_scaled, factor, ref);
    kernels::probability(amps, ref_prob, ref);
    double worst = 0.0;
    std::string names;
    for (const auto* ks : kernels::available()) {
      names += std::string(names.empty() ? "" : ",") + ks->name;
      std::vector<Spinor> st = amps, sc = amps;
      std::vector<double> pr(n);
      kernels::symbol_step(st, coin, phase, *ks);
      kernels::scale(sc, factor, *ks);
      kernels::probability(amps, pr, *ks);
      for (std::size_t j = 0; j < n; ++j) {
        worst = std::max({worst, std::abs(st[j].plus - ref_step[j].plus),
                          std::abs(st[j].minus - ref_step[j].minus),
                          std::abs(sc[j].plus - ref_scaled[j].plus),
                          std::abs(sc[j].minus - ref_scaled[j].minus),
                          std::abs(pr[j] - ref_prob[j]) / std::max(1.0, ref_prob[j])});
      }
    }
    CheckResult r = verdict(worst, 1e-13, "max deviation");
    r.detail += " over [" + names + "]";
    return r;
  });
}

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
  return {check_shift_gram_commute(),    check_gram_roundtrip(seed),
          check_dual_basis(),            check_backend_equivalence(seed),
          check_causality(seed),         check_gauge_equivalence(),
          check_orthogonal_degeneracy(), check_alpha_pipeline(seed),
          check_unitarity(seed),         check_simd_kernels(seed)};
}

}  // namespace nqw
