#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "qnoise/spectral.hpp"
#include "qnoise/spectrum_series.hpp"

namespace qnoise::processlab {

/// Two-sided target S(f) = level * |f_c|^-gamma with |f_c| = |f| clamped to
/// [f_low, f_high]: flat below f_low (finite variance) and above f_high.
struct PowerLaw {
  double gamma;
  double f_low;   // Hz
  double f_high;  // Hz
  double level = 1.0;  // V^2/Hz at |f| = 1 Hz

  double operator()(double f_hz) const;
};

struct SynthesisSpec {
  std::variant<spectral::CovarianceModel, PowerLaw> source;
  std::size_t n = 1024;  // power of two, >= 64
  double dt = 1.0;       // s
  std::uint64_t seed = 1;

  void validate() const;
};

struct EmbeddingDiagnostics {
  std::size_t size;          // circulant length, 2 n
  double min_eigenvalue;
  double clipped_fraction;   // clipped negative mass / total absolute mass
};

inline constexpr double kMaxClippedFraction = 0.01;

/// Stationary Gaussian sequences from a circulant spectrum: for a covariance
/// source the eigenvalues of the 2n-periodic embedding of C(k dt), for a power
/// law the sampled target spectrum. One complex FFT yields two independent
/// windows (real and imaginary parts); window 2k and 2k+1 share substream k,
/// so any window is reproducible from (seed, index) alone.
class Synthesizer {
 public:
  /// Throws ValidationError for an invalid spec, NumericalError when clipping
  /// exceeds kMaxClippedFraction.
  explicit Synthesizer(SynthesisSpec spec);
  ~Synthesizer();
  Synthesizer(Synthesizer&&) noexcept;
  Synthesizer& operator=(Synthesizer&&) noexcept;

  spectral::SignalWindow window(std::size_t index) const;
  std::vector<spectral::SignalWindow> ensemble(std::size_t count, unsigned workers = 1) const;
  /// Windows first .. first + count - 1, identical to the same indices of a full ensemble.
  std::vector<spectral::SignalWindow> windows(std::size_t first, std::size_t count, unsigned workers = 1) const;

  const SynthesisSpec& spec() const { return spec_; }
  const EmbeddingDiagnostics& diagnostics() const { return diag_; }
  /// Circulant eigenvalues after clipping.
  const std::vector<double>& eigenvalues() const { return eigen_; }

 private:
  struct Plan;
  void fillPair(std::size_t pair, std::vector<double>& re, std::vector<double>& im) const;

  SynthesisSpec spec_;
  EmbeddingDiagnostics diag_{};
  std::vector<double> eigen_;
  std::unique_ptr<Plan> plan_;
};

/// Window 0 of Synthesizer(spec).
spectral::SignalWindow synthesize(const SynthesisSpec& spec);

/// Least-squares slope of ln S against ln f over grid points in [f_lo, f_hi],
/// negated. Needs at least 8 points in range, all with positive values.
double slopeFit(const SpectrumSeries& spectrum, double f_lo, double f_hi);

}  // namespace qnoise::processlab
