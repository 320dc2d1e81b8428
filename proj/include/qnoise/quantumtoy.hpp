#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace qnoise::quantumtoy {

using Matrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-12;

/// A density matrix together with a Hermitian operator U(t_i) on the time
/// grid t_i = i dt, i = 0..n-1, and a real bias U0. The fluctuation operator
/// at node i is U(t_i) - U0 * I.
class ToySystem {
 public:
  /// Throws ValidationError if rho is not a density matrix (Hermitian, unit
  /// trace, PSD to 1e-12), any U(t_i) is not Hermitian, or shapes disagree.
  ToySystem(Matrix rho, double dt, std::vector<Matrix> family, double u0 = 0.0);

  static ToySystem sampled(Matrix rho, double dt, std::size_t nodes, double u0,
                           const std::function<Matrix(double)>& family);

  Eigen::Index dim() const { return rho_.rows(); }
  std::size_t nodes() const { return family_.size(); }
  const Matrix& rho() const { return rho_; }
  const std::vector<Matrix>& family() const { return family_; }
  double dt() const { return dt_; }
  double u0() const { return u0_; }
  double time(std::size_t i) const { return static_cast<double>(i) * dt_; }
  /// Trapezoidal weights (a single node gets dt).
  const std::vector<double>& weights() const { return weights_; }
  /// Sum of the weights: (n - 1) dt, or dt for one node.
  double tm() const { return tm_; }
  /// U(t_i) - U0 * I.
  Matrix fluctuation(std::size_t i) const;
  /// tr(rho X).
  cplx expectation(const Matrix& x) const { return (rho_ * x).trace(); }

 private:
  Matrix rho_;
  double dt_;
  std::vector<Matrix> family_;
  double u0_;
  std::vector<double> weights_;
  double tm_;
};

struct Quadratures {
  Matrix us;
  Matrix uc;
};

/// Us = sum_i w_i dU_i sin(omega t_i), Uc likewise with cos.
Quadratures quadratureOperators(const ToySystem& sys, double omega);

struct BoundReport {
  double omega;
  double us2;               // <Us^2>
  double uc2;               // <Uc^2>
  cplx commutator;          // <[Us, Uc]>, purely imaginary
  double s_est;             // (<Us^2> + <Uc^2>) / t_m
  double s_f_est;           // |<[Us, Uc]>| / t_m
  double slack;             // s_est - s_f_est
  double product_slack;     // <Us^2><Uc^2> - |<[Us, Uc]>|^2 / 4
};

BoundReport spectrumAndBound(const ToySystem& sys, double omega);

struct CommutatorCheck {
  double omega;
  cplx lhs;          // tr(rho [Us, Uc]) from the matrix products
  cplx rhs;          // sum_ij w_i w_j tr(rho dU_i dU_j) sin(omega (t_i - t_j))
  double residual;   // |lhs - rhs|
  double relative;   // residual / max(|lhs|, 1)
};

CommutatorCheck commutatorIdentity(const ToySystem& sys, double omega);
/// Same check on several frequencies; the pair correlations are computed once.
std::vector<CommutatorCheck> commutatorIdentity(const ToySystem& sys, std::span<const double> omegas);

// ---------------------------------------------------------------------------
// Random systems

/// Ginibre-style: rho = M M^dagger / tr, M of size dim x rank with complex
/// Gaussian entries. rank = 1 gives a pure state.
Matrix randomDensityMatrix(std::mt19937_64& rng, Eigen::Index dim, Eigen::Index rank);
/// (A + A^dagger) / 2 for a complex Gaussian A.
Matrix randomHermitian(std::mt19937_64& rng, Eigen::Index dim);
/// dt = 1 / nodes so that t_m stays of order one.
ToySystem randomSystem(std::mt19937_64& rng, Eigen::Index dim, std::size_t nodes, Eigen::Index rank);

struct SweepConfig {
  std::size_t systems = 1000;
  std::uint64_t seed = 1;
  Eigen::Index max_dim = 6;
  std::size_t max_nodes = 128;
  /// Positive frequencies; each is also evaluated at -omega.
  std::vector<double> omegas{0.7, 3.0, 6.283185307179586, 17.0, 40.0};
  unsigned workers = 1;
};

struct SystemSummary {
  std::size_t index;
  Eigen::Index dim;
  std::size_t nodes;
  Eigen::Index rank;
  double min_slack;
  double median_slack;
  double min_product_slack;
  double median_product_slack;
  double max_identity_relative;   // commutator identity residual / max(|lhs|, 1)
  double max_odd_residual;        // |<C>(omega) + <C>(-omega)| / max(|<C>(omega)|, tiny)
  double max_real_part;           // |Re <[Us, Uc]>|
};

/// System i draws from substream i of the seed: dim in [2, max_dim],
/// nodes in [1, max_nodes], rank in [1, dim].
std::vector<SystemSummary> verifyRandomSystems(const SweepConfig& cfg);

// ---------------------------------------------------------------------------

struct LadderRow {
  std::size_t nodes;
  double tm;
  double s_est;
  double s_f_est;
};

/// Finite-window values on a doubling ladder of t_m at fixed dt
/// (nodes n0, 2 n0 - 1, 4 n0 - 3, ...). No limit is asserted.
std::vector<LadderRow> doublingLadder(const Matrix& rho, double u0, double dt, std::size_t n0, int levels,
                                      double omega, const std::function<Matrix(double)>& family);

/// The two-level family U(t) = cos(nu t) sigma_x + sin(nu t) sigma_y.
Matrix rotatingSpin(double nu, double t);

}  // namespace qnoise::quantumtoy
