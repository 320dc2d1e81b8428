#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qnoise/quadrature.hpp"
#include "qnoise/spectrum_series.hpp"

namespace qnoise::spectral {

/// Uniformly sampled fluctuation Delta U(t_i), t_i = i dt, i = 0..n-1 (volts).
/// The window length t_m is the trapezoidal span (n - 1) dt.
class SignalWindow {
 public:
  SignalWindow(double dt, std::vector<double> samples);

  double dt() const { return dt_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double tm() const { return dt_ * static_cast<double>(samples_.size() - 1); }

 private:
  double dt_;
  std::vector<double> samples_;
};

/// Trapezoidal weights on n nodes with spacing dt. A single node gets weight dt.
std::vector<double> trapezoidWeights(std::size_t n, double dt);

struct WindowTransform {
  double us;  // integral of dU sin(omega t), V s
  double uc;  // integral of dU cos(omega t), V s
};

WindowTransform windowTransforms(const SignalWindow& window, double omega);

/// Ensemble mean of (Us^2 + Uc^2) / t_m at omega = 2 pi f, in V^2/Hz.
/// Per-window terms are reduced with a fixed pairwise tree, so the value does
/// not depend on `workers`.
double powerEstimate(std::span<const SignalWindow> ensemble, double f_hz, unsigned workers = 1);

/// powerEstimate on every grid point (grid strictly increasing).
SpectrumSeries powerSpectrum(std::span<const SignalWindow> ensemble, const std::vector<double>& f_hz,
                             unsigned workers = 1);

// ---------------------------------------------------------------------------
// Covariance models

struct OuModel {
  double variance;  // V^2
  double tau_c;     // s
};

/// ln(a + (tau / tau0)^2): a formal, not necessarily positive-definite, model.
struct LogModel {
  double a;
  double tau0;  // s
};

class CovarianceModel {
 public:
  static CovarianceModel ou(double variance, double tau_c);
  static CovarianceModel log(double a, double tau0);
  static CovarianceModel sum(std::vector<CovarianceModel> terms);
  static CovarianceModel zero() { return sum({}); }

  /// Even in tau by construction.
  double operator()(double tau) const;

  /// True when every component is a valid covariance (no Log terms).
  bool isPositiveDefinite() const;
  bool hasLogTerm() const { return !isPositiveDefinite(); }
  std::string describe() const;

  using Variant = std::variant<OuModel, LogModel, std::vector<CovarianceModel>>;
  const Variant& variant() const { return v_; }

 private:
  explicit CovarianceModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Parses "ou:variance=1,tau=0.5", "log:a=1,tau0=1", and '+'-joined sums.
CovarianceModel parseCovarianceModel(std::string_view text);

// ---------------------------------------------------------------------------
// Finite-window spectral functional

struct SigmaResult {
  double value;          // real part of the triangular-window form
  double imag;           // imaginary part (vanishes by symmetry)
  double two_term;       // first - second / t_m on the same grid
  double first_term;     // integral of S e^{i omega tau} over [-t_m, t_m]
  double second_term;    // integral of |tau| S e^{i omega tau}, before dividing by t_m
  std::size_t panels;
};

/// Integral over [-t_m, t_m] of (1 - |tau|/t_m) S(tau) e^{i omega tau}, by
/// adaptive half-period panels. Throws ValidationError for omega = 0 or
/// t_m <= 0, NumericalError if the imaginary residue exceeds 1e-9 relative.
SigmaResult sigmaOfF(const CovarianceModel& model, double omega, double tm,
                     const quadrature::Options& opts = {});

// ---------------------------------------------------------------------------
// Kernel identities

struct KernelResiduals {
  double omega;
  double tm;
  // ln|tau| kernels
  double log_first;        // A: integral of ln|tau| e^{i omega tau}
  double log_second;       // B: (1/t_m) integral of |tau| ln|tau| e^{i omega tau}
  double log_difference;   // A - B
  double log_limit;        // -pi / |omega|
  double log_relative_residual;
  double log_envelope;     // 2 ln(t_m) sin(omega t_m) / omega, the divergent part of A and B
  // sign kernel: integral of (tau/|tau|) e^{i omega tau} is purely imaginary
  double sign_numeric;     // imaginary part
  double sign_exact;       // (2/omega)(1 - cos omega t_m)
  double sign_relative_residual;
  // (1/t_m) integral of tau e^{i omega tau}, imaginary part, against -(2/omega) cos(omega t_m)
  double linear_numeric;
  double linear_leading;
  // truncated sine integral over k in [0, K] plus asymptotic tail
  double sinc_tau;
  double sinc_cutoff;
  double sinc_truncated;
  double sinc_tail;
  double sinc_corrected;
  double sinc_target;      // (pi/2) sign(tau)
  double sinc_residual;
};

/// sinc_cutoff <= 0 selects K = 1000 / |tau|.
KernelResiduals kernelAsymptotics(double omega, double tm, double sinc_tau = 1.0, double sinc_cutoff = 0.0);

/// Two-term asymptotic tail of the integral of sin(k tau)/k over [K, inf).
double sincTail(double cutoff, double tau);

}  // namespace qnoise::spectral
