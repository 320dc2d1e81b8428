#include "qnoise/processlab.hpp"

#include <algorithm>
#include <cmath>
#include <fftw3.h>
#include <fmt/format.h>
#include <mutex>

#include "qnoise/error.hpp"
#include "qnoise/parallel.hpp"
#include "qnoise/random.hpp"

namespace qnoise::processlab {

namespace {

bool isPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// The FFTW planner is not thread-safe; execution on fresh arrays is.
std::mutex& plannerMutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

double PowerLaw::operator()(double f_hz) const {
  const double f = std::clamp(std::abs(f_hz), f_low, f_high);
  return level * std::pow(f, -gamma);
}

void SynthesisSpec::validate() const {
  if (!isPowerOfTwo(n) || n < 64) throw ValidationError(fmt::format("n must be a power of two >= 64 (got {})", n));
  if (!std::isfinite(dt) || dt <= 0.0) throw ValidationError(fmt::format("dt must be positive (got {})", dt));
  if (const auto* p = std::get_if<PowerLaw>(&source)) {
    if (!std::isfinite(p->gamma) || p->gamma < 0.0 || p->gamma > 2.0) {
      throw ValidationError(fmt::format("gamma must lie in [0, 2] (got {})", p->gamma));
    }
    const double nyquist = 0.5 / dt;
    if (!(p->f_low > 0.0)) throw ValidationError(fmt::format("f_low must be positive (got {})", p->f_low));
    if (!(p->f_high > p->f_low)) {
      throw ValidationError(fmt::format("f_high must exceed f_low (got {} <= {})", p->f_high, p->f_low));
    }
    if (p->f_high > nyquist * (1.0 + 1e-12)) {
      throw ValidationError(fmt::format("f_high {} exceeds the Nyquist frequency {}", p->f_high, nyquist));
    }
    if (!std::isfinite(p->level) || p->level <= 0.0) throw ValidationError("power-law level must be positive");
  } else {
    const auto& model = std::get<spectral::CovarianceModel>(source);
    if (model.hasLogTerm()) {
      throw ValidationError("the log covariance model is not a valid covariance and cannot be synthesized");
    }
  }
}

struct Synthesizer::Plan {
  fftw_plan plan = nullptr;
  ~Plan() {
    if (plan) {
      std::lock_guard lock(plannerMutex());
      fftw_destroy_plan(plan);
    }
  }
};

Synthesizer::Synthesizer(SynthesisSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  const std::size_t m = 2 * spec_.n;
  eigen_.assign(m, 0.0);

  if (const auto* p = std::get_if<PowerLaw>(&spec_.source)) {
    for (std::size_t k = 0; k < m; ++k) {
      const double f = static_cast<double>(std::min(k, m - k)) / (static_cast<double>(m) * spec_.dt);
      eigen_[k] = (*p)(f) / spec_.dt;
    }
  } else {
    const auto& model = std::get<spectral::CovarianceModel>(spec_.source);
    FftwBuffer buf(m);
    for (std::size_t j = 0; j < m; ++j) {
      buf.data[j][0] = model(static_cast<double>(std::min(j, m - j)) * spec_.dt);
      buf.data[j][1] = 0.0;
    }
    fftw_plan forward;
    {
      std::lock_guard lock(plannerMutex());
      forward = fftw_plan_dft_1d(static_cast<int>(m), buf.data, buf.data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(forward);
    {
      std::lock_guard lock(plannerMutex());
      fftw_destroy_plan(forward);
    }
    for (std::size_t k = 0; k < m; ++k) eigen_[k] = buf.data[k][0];
  }

  double total = 0.0, clipped = 0.0, min_eig = eigen_[0];
  for (double& l : eigen_) {
    total += std::abs(l);
    min_eig = std::min(min_eig, l);
    if (l < 0.0) {
      clipped += -l;
      l = 0.0;
    }
  }
  diag_ = {m, min_eig, total > 0.0 ? clipped / total : 0.0};
  if (diag_.clipped_fraction > kMaxClippedFraction) {
    throw NumericalError(fmt::format(
        "circulant embedding of size {} needs {:.3g}% of its spectral mass clipped (limit {}%); min eigenvalue {:.3g}",
        m, 100.0 * diag_.clipped_fraction, 100.0 * kMaxClippedFraction, min_eig));
  }
  // amplitude per mode: sqrt(lambda_k / m)
  for (double& l : eigen_) l = std::sqrt(l / static_cast<double>(m));
  diag_.size = m;

  plan_ = std::make_unique<Plan>();
  FftwBuffer scratch(m);
  std::lock_guard lock(plannerMutex());
  plan_->plan = fftw_plan_dft_1d(static_cast<int>(m), scratch.data, scratch.data, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Synthesizer::~Synthesizer() = default;
Synthesizer::Synthesizer(Synthesizer&&) noexcept = default;
Synthesizer& Synthesizer::operator=(Synthesizer&&) noexcept = default;

void Synthesizer::fillPair(std::size_t pair, std::vector<double>& re, std::vector<double>& im) const {
  const std::size_t m = eigen_.size();
  FftwBuffer buf(m);
  auto rng = substream(spec_.seed, pair);
  std::normal_distribution<double> n01;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = n01(rng);
    const double b = n01(rng);
    buf.data[k][0] = eigen_[k] * a;
    buf.data[k][1] = eigen_[k] * b;
  }
  fftw_execute_dft(plan_->plan, buf.data, buf.data);
  re.resize(spec_.n);
  im.resize(spec_.n);
  for (std::size_t j = 0; j < spec_.n; ++j) {
    re[j] = buf.data[j][0];
    im[j] = buf.data[j][1];
  }
}

spectral::SignalWindow Synthesizer::window(std::size_t index) const {
  std::vector<double> re, im;
  fillPair(index / 2, re, im);
  return {spec_.dt, index % 2 == 0 ? std::move(re) : std::move(im)};
}

std::vector<spectral::SignalWindow> Synthesizer::ensemble(std::size_t count, unsigned workers) const {
  return windows(0, count, workers);
}

std::vector<spectral::SignalWindow> Synthesizer::windows(std::size_t first, std::size_t count,
                                                         unsigned workers) const {
  if (count == 0) return {};
  const std::size_t first_pair = first / 2;
  const std::size_t pairs = (first + count - 1) / 2 - first_pair + 1;
  std::vector<std::vector<double>> data(2 * pairs);
  parallelFor(pairs, workers,
              [&](std::size_t k) { fillPair(first_pair + k, data[2 * k], data[2 * k + 1]); });
  std::vector<spectral::SignalWindow> out;
  out.reserve(count);
  const std::size_t offset = first % 2;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(spec_.dt, std::move(data[offset + i]));
  return out;
}

spectral::SignalWindow synthesize(const SynthesisSpec& spec) { return Synthesizer(spec).window(0); }

double slopeFit(const SpectrumSeries& spectrum, double f_lo, double f_hi) {
  if (!(f_lo > 0.0) || !(f_hi > f_lo)) {
    throw ValidationError(fmt::format("slope range must satisfy 0 < f_lo < f_hi (got [{}, {}])", f_lo, f_hi));
  }
  std::vector<double> x, y;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double f = spectrum.frequencies()[i];
    if (f < f_lo || f > f_hi) continue;
    const double v = spectrum.values()[i];
    if (!(v > 0.0)) {
      throw ValidationError(fmt::format("spectrum value at f={} is not positive ({})", f, v));
    }
    x.push_back(std::log(f));
    y.push_back(std::log(v));
  }
  if (x.size() < 8) {
    throw ValidationError(fmt::format("slope fit needs at least 8 grid points in range (got {})", x.size()));
  }
  const double nx = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nx;
  my /= nx;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return -sxy / sxx;
}

}  // namespace qnoise::processlab
