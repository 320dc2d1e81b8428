#include "qnoise/quantumtoy.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "qnoise/error.hpp"
#include "qnoise/parallel.hpp"
#include "qnoise/random.hpp"
#include "qnoise/spectral.hpp"

namespace qnoise::quantumtoy {

namespace {

double maxAbs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

bool isHermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && maxAbs(m - m.adjoint()) <= tol * std::max(1.0, maxAbs(m));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

ToySystem::ToySystem(Matrix rho, double dt, std::vector<Matrix> family, double u0)
    : rho_(std::move(rho)), dt_(dt), family_(std::move(family)), u0_(u0) {
  if (!std::isfinite(dt_) || dt_ <= 0.0) throw ValidationError(fmt::format("dt must be positive (got {})", dt_));
  if (!std::isfinite(u0_)) throw ValidationError("U0 must be finite");
  if (rho_.rows() < 2 || rho_.rows() != rho_.cols()) {
    throw ValidationError(fmt::format("rho must be square with dimension >= 2 (got {}x{})", rho_.rows(), rho_.cols()));
  }
  if (!rho_.allFinite()) throw ValidationError("rho has non-finite entries");
  if (!isHermitian(rho_, kHermitianTol)) throw ValidationError("rho is not Hermitian");
  const cplx tr = rho_.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
    throw ValidationError(fmt::format("rho trace is {}+{}i, expected 1", tr.real(), tr.imag()));
  }
  const Matrix sym = 0.5 * (rho_ + rho_.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    throw ValidationError(fmt::format("rho is not positive semidefinite (min eigenvalue {:.3g})", min_eig));
  }
  if (family_.empty()) throw ValidationError("operator family must have at least one node");
  for (std::size_t i = 0; i < family_.size(); ++i) {
    const auto& u = family_[i];
    if (u.rows() != rho_.rows() || u.cols() != rho_.cols()) {
      throw ValidationError(fmt::format("U(t_{}) has shape {}x{}, expected {}x{}", i, u.rows(), u.cols(),
                                        rho_.rows(), rho_.cols()));
    }
    if (!u.allFinite()) throw ValidationError(fmt::format("U(t_{}) has non-finite entries", i));
    if (!isHermitian(u, kHermitianTol)) throw ValidationError(fmt::format("U(t_{}) is not Hermitian", i));
  }
  weights_ = spectral::trapezoidWeights(family_.size(), dt_);
  tm_ = family_.size() == 1 ? dt_ : dt_ * static_cast<double>(family_.size() - 1);
}

ToySystem ToySystem::sampled(Matrix rho, double dt, std::size_t nodes, double u0,
                             const std::function<Matrix(double)>& family) {
  std::vector<Matrix> fam;
  fam.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) fam.push_back(family(static_cast<double>(i) * dt));
  return {std::move(rho), dt, std::move(fam), u0};
}

Matrix ToySystem::fluctuation(std::size_t i) const {
  Matrix du = family_[i];
  du.diagonal().array() -= u0_;
  return du;
}

Quadratures quadratureOperators(const ToySystem& sys, double omega) {
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
  const auto d = sys.dim();
  Quadratures q{Matrix::Zero(d, d), Matrix::Zero(d, d)};
  for (std::size_t i = 0; i < sys.nodes(); ++i) {
    const double phase = omega * sys.time(i);
    const Matrix du = sys.fluctuation(i);
    q.us += (sys.weights()[i] * std::sin(phase)) * du;
    q.uc += (sys.weights()[i] * std::cos(phase)) * du;
  }
  return q;
}

BoundReport spectrumAndBound(const ToySystem& sys, double omega) {
  const auto q = quadratureOperators(sys, omega);
  BoundReport r{};
  r.omega = omega;
  r.us2 = sys.expectation(q.us * q.us).real();
  r.uc2 = sys.expectation(q.uc * q.uc).real();
  r.commutator = sys.expectation(q.us * q.uc - q.uc * q.us);
  const double c = std::abs(r.commutator);
  r.s_est = (r.us2 + r.uc2) / sys.tm();
  r.s_f_est = c / sys.tm();
  r.slack = r.s_est - r.s_f_est;
  r.product_slack = r.us2 * r.uc2 - 0.25 * c * c;
  return r;
}

namespace {

// G_ij = tr(rho dU_i dU_j)
Matrix pairCorrelations(const ToySystem& sys) {
  const auto n = sys.nodes();
  std::vector<Matrix> du(n), left(n);
  for (std::size_t i = 0; i < n; ++i) {
    du[i] = sys.fluctuation(i);
    left[i] = sys.rho() * du[i];
  }
  Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (left[i].array() * du[j].transpose().array()).sum();
    }
  }
  return g;
}

CommutatorCheck checkWith(const ToySystem& sys, const Matrix& g, double omega) {
  const auto q = quadratureOperators(sys, omega);
  CommutatorCheck c{};
  c.omega = omega;
  c.lhs = sys.expectation(q.us * q.uc - q.uc * q.us);
  cplx rhs = 0.0;
  const auto& w = sys.weights();
  for (std::size_t i = 0; i < sys.nodes(); ++i) {
    for (std::size_t j = 0; j < sys.nodes(); ++j) {
      if (i == j) continue;
      rhs += (w[i] * w[j] * std::sin(omega * (sys.time(i) - sys.time(j)))) *
             g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  c.rhs = rhs;
  c.residual = std::abs(c.lhs - c.rhs);
  c.relative = c.residual / std::max(std::abs(c.lhs), 1.0);
  return c;
}

}  // namespace

CommutatorCheck commutatorIdentity(const ToySystem& sys, double omega) {
  return checkWith(sys, pairCorrelations(sys), omega);
}

std::vector<CommutatorCheck> commutatorIdentity(const ToySystem& sys, std::span<const double> omegas) {
  const Matrix g = pairCorrelations(sys);
  std::vector<CommutatorCheck> out;
  out.reserve(omegas.size());
  for (double w : omegas) out.push_back(checkWith(sys, g, w));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Matrix gaussianMatrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n01;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

}  // namespace

Matrix randomDensityMatrix(std::mt19937_64& rng, Eigen::Index dim, Eigen::Index rank) {
  if (dim < 2) throw ValidationError("dimension must be at least 2");
  if (rank < 1 || rank > dim) throw ValidationError(fmt::format("rank must be in [1, {}] (got {})", dim, rank));
  const Matrix m = gaussianMatrix(rng, dim, rank);
  Matrix rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return rho;
}

Matrix randomHermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix a = gaussianMatrix(rng, dim, dim);
  return 0.5 * (a + a.adjoint());
}

ToySystem randomSystem(std::mt19937_64& rng, Eigen::Index dim, std::size_t nodes, Eigen::Index rank) {
  Matrix rho = randomDensityMatrix(rng, dim, rank);
  std::vector<Matrix> family;
  family.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) family.push_back(randomHermitian(rng, dim));
  std::normal_distribution<double> n01;
  const double u0 = n01(rng);
  return {std::move(rho), 1.0 / static_cast<double>(nodes), std::move(family), u0};
}

std::vector<SystemSummary> verifyRandomSystems(const SweepConfig& cfg) {
  if (cfg.max_dim < 2) throw ValidationError("max_dim must be at least 2");
  if (cfg.max_nodes < 1) throw ValidationError("max_nodes must be at least 1");
  if (cfg.omegas.empty()) throw ValidationError("at least one omega is required");
  std::vector<double> grid;
  for (double w : cfg.omegas) {
    grid.push_back(w);
    grid.push_back(-w);
  }

  std::vector<SystemSummary> out(cfg.systems);
  parallelFor(cfg.systems, cfg.workers, [&](std::size_t idx) {
    auto rng = substream(cfg.seed, idx);
    const auto dim = std::uniform_int_distribution<Eigen::Index>(2, cfg.max_dim)(rng);
    const auto nodes = std::uniform_int_distribution<std::size_t>(1, cfg.max_nodes)(rng);
    const auto rank = std::uniform_int_distribution<Eigen::Index>(1, dim)(rng);
    const auto sys = randomSystem(rng, dim, nodes, rank);

    std::vector<double> slack, product;
    SystemSummary s{idx, dim, nodes, rank, 0, 0, 0, 0, 0, 0, 0};
    for (double w : grid) {
      const auto b = spectrumAndBound(sys, w);
      slack.push_back(b.slack);
      product.push_back(b.product_slack);
      s.max_real_part = std::max(s.max_real_part, std::abs(b.commutator.real()));
    }
    const auto checks = commutatorIdentity(sys, grid);
    for (std::size_t k = 0; k < checks.size(); ++k) {
      s.max_identity_relative = std::max(s.max_identity_relative, checks[k].relative);
    }
    for (std::size_t k = 0; k + 1 < checks.size(); k += 2) {
      const double mag = std::max(std::abs(checks[k].lhs), std::numeric_limits<double>::min());
      s.max_odd_residual = std::max(s.max_odd_residual, std::abs(checks[k].lhs + checks[k + 1].lhs) / mag);
    }
    s.min_slack = *std::min_element(slack.begin(), slack.end());
    s.median_slack = median(slack);
    s.min_product_slack = *std::min_element(product.begin(), product.end());
    s.median_product_slack = median(product);
    out[idx] = s;
  });
  return out;
}

std::vector<LadderRow> doublingLadder(const Matrix& rho, double u0, double dt, std::size_t n0, int levels,
                                      double omega, const std::function<Matrix(double)>& family) {
  if (n0 < 2) throw ValidationError("ladder needs at least 2 nodes at the first rung");
  std::vector<LadderRow> out;
  std::size_t n = n0;
  for (int k = 0; k < levels; ++k) {
    const auto sys = ToySystem::sampled(rho, dt, n, u0, family);
    const auto b = spectrumAndBound(sys, omega);
    out.push_back({n, sys.tm(), b.s_est, b.s_f_est});
    n = 2 * n - 1;
  }
  return out;
}

Matrix rotatingSpin(double nu, double t) {
  Matrix m(2, 2);
  const cplx e = std::polar(1.0, -nu * t);  // cos - i sin
  m << 0.0, e, std::conj(e), 0.0;
  return m;
}

}  // namespace qnoise::quantumtoy
