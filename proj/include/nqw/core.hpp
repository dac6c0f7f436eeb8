#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace nqw {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Fixed-size 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> a{};

  constexpr cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
  constexpr const cplx& operator()(int r, int c) const {
    return a[static_cast<std::size_t>(2 * r + c)];
  }

  static Mat2 identity() { return {{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}}}; }
  static Mat2 diag(cplx d0, cplx d1) { return {{d0, cplx{0.0}, cplx{0.0}, d1}}; }

  Mat2 adjoint() const;
  cplx trace() const { return a[0] + a[3]; }
  cplx det() const { return a[0] * a[3] - a[1] * a[2]; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend Mat2 operator*(cplx s, const Mat2& x);
  friend Mat2 operator+(const Mat2& x, const Mat2& y);
  friend Mat2 operator-(const Mat2& x, const Mat2& y);
};

/// Largest absolute entry of x - y.
double max_abs_diff(const Mat2& x, const Mat2& y);

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// Coin-space amplitudes in the sigma_z eigenbasis {|c+>, |c->}.
struct Spinor {
  cplx plus{};
  cplx minus{};

  double norm_squared() const { return std::norm(plus) + std::norm(minus); }

  static Spinor up() { return {cplx{1.0}, cplx{0.0}}; }
  static Spinor down() { return {cplx{0.0}, cplx{1.0}}; }
};

static_assert(sizeof(Spinor) == 4 * sizeof(double), "Spinor must be four packed doubles");

Spinor operator*(const Mat2& m, const Spinor& s);

/// Density matrix |s><s| / <s|s>.
Mat2 density(const Spinor& s);

/// A unitary 2x2 coin. Construction validates unitarity.
class CoinOp {
 public:
  /// Throws Error(InvalidArgument) when U^dagger U deviates from 1 by more than `tol`.
  explicit CoinOp(const Mat2& m, double tol = 1e-12);

  const Mat2& matrix() const { return m_; }

  friend CoinOp operator*(const CoinOp& x, const CoinOp& y) { return CoinOp(x.m_ * y.m_); }

 private:
  Mat2 m_;
};

/// Largest entry deviation of U^dagger U from the identity.
double unitarity_defect(const Mat2& m);

/// exp(i pi/4 sigma_y).
CoinOp coin_experimental();
/// sigma_z * coin_experimental().
CoinOp coin_hadamard();
/// exp(i angle sigma_y); coin_experimental() is rotation(pi/4).
CoinOp coin_rotation(double angle);
/// R(theta) = exp(i theta sigma_z).
CoinOp momentum_shift_op(double theta);

/// Periodic lattice of M sites and its FFT-conjugate momentum grid.
///
/// Sites are labelled x in {-M/2, ..., M/2-1} and stored at index x + M/2.
/// Momenta are p_j = -pi + 2 pi j / M.
class LatticeGrid {
 public:
  explicit LatticeGrid(std::size_t size);

  std::size_t size() const { return size_; }
  long min_site() const { return -static_cast<long>(size_ / 2); }
  long max_site() const { return static_cast<long>(size_ / 2) - 1; }

  long site(std::size_t index) const { return static_cast<long>(index) + min_site(); }
  /// Index of site x, wrapped periodically.
  std::size_t index(long x) const;
  double momentum(std::size_t j) const;
  double momentum_spacing() const { return 2.0 * kPi / static_cast<double>(size_); }

  /// Smallest power of two >= 2 (steps + 6 ceil(sigma)) + 64.
  static LatticeGrid for_walk(std::size_t steps, double sigma);

  friend bool operator==(const LatticeGrid&, const LatticeGrid&) = default;

 private:
  std::size_t size_;
};

/// A 2x2 matrix per momentum node.
struct MatrixField {
  LatticeGrid grid;
  std::vector<Mat2> values;
};

/// S(p + theta) = diag(e^{i(p+theta)}, e^{-i(p+theta)}) on every node.
MatrixField shift_symbol(const LatticeGrid& grid, double theta);

/// theta wrapped into [0, 2 pi).
double wrap_angle(double theta);

}  // namespace nqw
