#include "qnoise/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <sstream>

#include "qnoise/error.hpp"
#include "qnoise/parallel.hpp"

namespace qnoise::spectral {

using std::numbers::pi;
using cplx = std::complex<double>;

SignalWindow::SignalWindow(double dt, std::vector<double> samples) : dt_(dt), samples_(std::move(samples)) {
  if (!std::isfinite(dt_) || dt_ <= 0.0) {
    throw ValidationError(fmt::format("dt must be finite and positive (got {})", dt_));
  }
  if (samples_.size() < 2) {
    throw ValidationError(fmt::format("a signal window needs at least 2 samples (got {})", samples_.size()));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) throw ValidationError(fmt::format("sample {} is not finite", i));
  }
}

std::vector<double> trapezoidWeights(std::size_t n, double dt) {
  std::vector<double> w(n, dt);
  if (n >= 2) {
    w.front() = 0.5 * dt;
    w.back() = 0.5 * dt;
  }
  return w;
}

namespace {

struct Kernel {
  std::vector<double> sin_w;  // w_i sin(omega t_i)
  std::vector<double> cos_w;  // w_i cos(omega t_i)
};

Kernel makeKernel(std::size_t n, double dt, double omega) {
  const auto w = trapezoidWeights(n, dt);
  Kernel k{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = omega * (static_cast<double>(i) * dt);
    k.sin_w[i] = w[i] * std::sin(phase);
    k.cos_w[i] = w[i] * std::cos(phase);
  }
  return k;
}

WindowTransform applyKernel(const Kernel& k, const std::vector<double>& x) {
  double us = 0.0, uc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    us += k.sin_w[i] * x[i];
    uc += k.cos_w[i] * x[i];
  }
  return {us, uc};
}

void requireConsistent(std::span<const SignalWindow> ensemble) {
  if (ensemble.empty()) throw ValidationError("ensemble must contain at least one window");
  const auto& ref = ensemble.front();
  for (std::size_t i = 1; i < ensemble.size(); ++i) {
    if (ensemble[i].dt() != ref.dt() || ensemble[i].size() != ref.size()) {
      throw ValidationError(fmt::format(
          "window {} has dt={} n={}, expected dt={} n={}", i, ensemble[i].dt(), ensemble[i].size(), ref.dt(),
          ref.size()));
    }
  }
}

double estimateWithKernel(std::span<const SignalWindow> ensemble, const Kernel& k, unsigned workers) {
  const double tm = ensemble.front().tm();
  std::vector<double> terms(ensemble.size());
  parallelFor(ensemble.size(), workers, [&](std::size_t i) {
    const auto t = applyKernel(k, ensemble[i].samples());
    terms[i] = (t.us * t.us + t.uc * t.uc) / tm;
  });
  return pairwiseSum(terms) / static_cast<double>(terms.size());
}

void requireFiniteOmega(double omega) {
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
}

}  // namespace

WindowTransform windowTransforms(const SignalWindow& window, double omega) {
  requireFiniteOmega(omega);
  return applyKernel(makeKernel(window.size(), window.dt(), omega), window.samples());
}

double powerEstimate(std::span<const SignalWindow> ensemble, double f_hz, unsigned workers) {
  requireConsistent(ensemble);
  const double omega = 2.0 * pi * f_hz;
  requireFiniteOmega(omega);
  return estimateWithKernel(ensemble, makeKernel(ensemble.front().size(), ensemble.front().dt(), omega), workers);
}

SpectrumSeries powerSpectrum(std::span<const SignalWindow> ensemble, const std::vector<double>& f_hz,
                             unsigned workers) {
  requireConsistent(ensemble);
  std::vector<double> values;
  values.reserve(f_hz.size());
  for (double f : f_hz) values.push_back(powerEstimate(ensemble, f, workers));
  return {f_hz, std::move(values), SpectrumUnits::VoltsSquaredPerHz};
}

// ---------------------------------------------------------------------------

CovarianceModel CovarianceModel::ou(double variance, double tau_c) {
  if (!std::isfinite(variance) || variance <= 0.0) {
    throw ValidationError(fmt::format("ou variance must be positive (got {})", variance));
  }
  if (!std::isfinite(tau_c) || tau_c <= 0.0) {
    throw ValidationError(fmt::format("ou tau must be positive (got {})", tau_c));
  }
  return CovarianceModel(OuModel{variance, tau_c});
}

CovarianceModel CovarianceModel::log(double a, double tau0) {
  if (!std::isfinite(a) || a <= 0.0) throw ValidationError(fmt::format("log a must be positive (got {})", a));
  if (!std::isfinite(tau0) || tau0 <= 0.0) {
    throw ValidationError(fmt::format("log tau0 must be positive (got {})", tau0));
  }
  return CovarianceModel(LogModel{a, tau0});
}

CovarianceModel CovarianceModel::sum(std::vector<CovarianceModel> terms) { return CovarianceModel(std::move(terms)); }

double CovarianceModel::operator()(double tau) const {
  const double t = std::abs(tau);
  if (const auto* m = std::get_if<OuModel>(&v_)) return m->variance * std::exp(-t / m->tau_c);
  if (const auto* m = std::get_if<LogModel>(&v_)) {
    const double r = t / m->tau0;
    return std::log(m->a + r * r);
  }
  double s = 0.0;
  for (const auto& term : std::get<std::vector<CovarianceModel>>(v_)) s += term(t);
  return s;
}

bool CovarianceModel::isPositiveDefinite() const {
  if (std::holds_alternative<LogModel>(v_)) return false;
  if (const auto* terms = std::get_if<std::vector<CovarianceModel>>(&v_)) {
    return std::all_of(terms->begin(), terms->end(), [](const auto& t) { return t.isPositiveDefinite(); });
  }
  return true;
}

std::string CovarianceModel::describe() const {
  if (const auto* m = std::get_if<OuModel>(&v_)) return fmt::format("ou:variance={},tau={}", m->variance, m->tau_c);
  if (const auto* m = std::get_if<LogModel>(&v_)) return fmt::format("log:a={},tau0={}", m->a, m->tau0);
  const auto& terms = std::get<std::vector<CovarianceModel>>(v_);
  if (terms.empty()) return "zero";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += '+';
    out += terms[i].describe();
  }
  return out;
}

namespace {

double modelParam(const std::vector<std::pair<std::string, double>>& kv, std::string_view key,
                  std::string_view kind) {
  for (const auto& [k, v] : kv) {
    if (k == key) return v;
  }
  throw ValidationError(fmt::format("{} model requires parameter '{}'", kind, key));
}

CovarianceModel parseTerm(std::string_view term) {
  const auto colon = term.find(':');
  const std::string kind(term.substr(0, colon));
  if (kind == "zero") return CovarianceModel::zero();
  if (colon == std::string_view::npos) throw ValidationError(fmt::format("model '{}' has no parameters", term));
  std::vector<std::pair<std::string, double>> kv;
  std::stringstream ss{std::string(term.substr(colon + 1))};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError(fmt::format("model parameter '{}' is not key=value", item));
    const std::string key = item.substr(0, eq);
    try {
      kv.emplace_back(key, std::stod(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("model parameter '{}' is not a number", key));
    }
  }
  if (kind == "ou") return CovarianceModel::ou(modelParam(kv, "variance", kind), modelParam(kv, "tau", kind));
  if (kind == "log") return CovarianceModel::log(modelParam(kv, "a", kind), modelParam(kv, "tau0", kind));
  throw ValidationError(fmt::format("unknown covariance model '{}' (expected ou, log or zero)", kind));
}

}  // namespace

CovarianceModel parseCovarianceModel(std::string_view text) {
  std::vector<CovarianceModel> terms;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto plus = text.find('+', start);
    const auto piece = text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
    if (piece.empty()) throw ValidationError(fmt::format("empty term in covariance model '{}'", text));
    terms.push_back(parseTerm(piece));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  if (terms.size() == 1) return terms.front();
  return CovarianceModel::sum(std::move(terms));
}

// ---------------------------------------------------------------------------

SigmaResult sigmaOfF(const CovarianceModel& model, double omega, double tm, const quadrature::Options& opts) {
  if (!std::isfinite(omega) || omega == 0.0) throw ValidationError("sigma requires a finite nonzero omega");
  if (!std::isfinite(tm) || tm <= 0.0) throw ValidationError(fmt::format("t_m must be positive (got {})", tm));

  auto phase = [omega](double tau) { return cplx(std::cos(omega * tau), std::sin(omega * tau)); };
  auto triangular = [&](double tau) { return (1.0 - std::abs(tau) / tm) * model(tau) * phase(tau); };
  auto plain = [&](double tau) { return model(tau) * phase(tau); };
  auto weighted = [&](double tau) { return std::abs(tau) * model(tau) * phase(tau); };

  const auto pos = quadrature::integrate(triangular, quadrature::halfPeriodBreaks(0.0, tm, omega), opts);
  const auto neg_panels = quadrature::mirrored(pos.panels);
  const cplx neg = quadrature::integrateOnPanels(triangular, neg_panels);
  const cplx total = pos.value + neg;

  const double scale = std::max(std::abs(total.real()), std::abs(pos.value));
  if (scale > 0.0 && std::abs(total.imag()) > 1e-9 * scale) {
    throw NumericalError(fmt::format("sigma: imaginary residue {:.3g} exceeds 1e-9 relative", total.imag()));
  }

  const cplx first = quadrature::integrateOnPanels(plain, pos.panels) + quadrature::integrateOnPanels(plain, neg_panels);
  const cplx second =
      quadrature::integrateOnPanels(weighted, pos.panels) + quadrature::integrateOnPanels(weighted, neg_panels);

  return {total.real(), total.imag(), (first - second / tm).real(), first.real(), second.real(),
          2 * pos.panels.size()};
}

// ---------------------------------------------------------------------------

double sincTail(double cutoff, double tau) {
  if (tau == 0.0) return 0.0;
  const double x = cutoff * std::abs(tau);
  const double tail = std::cos(x) / x + std::sin(x) / (x * x);
  return tau > 0.0 ? tail : -tail;
}

KernelResiduals kernelAsymptotics(double omega, double tm, double sinc_tau, double sinc_cutoff) {
  if (!std::isfinite(omega) || omega == 0.0) throw ValidationError("kernels require a finite nonzero omega");
  if (!std::isfinite(tm) || tm <= 0.0) throw ValidationError(fmt::format("t_m must be positive (got {})", tm));
  if (!std::isfinite(sinc_tau)) throw ValidationError("sinc tau must be finite");

  KernelResiduals r{};
  r.omega = omega;
  r.tm = tm;

  // ln|tau| kernels: even integrands, so A = 2 * integral over [0, t_m].
  // The innermost graded panel [0, eps] is integrated analytically with cos ~ 1.
  auto breaks = quadrature::halfPeriodBreaks(0.0, tm, omega);
  const double eps = quadrature::gradeTowardStart(breaks, 48);
  const double log_eps = std::log(eps);
  const auto i_log = quadrature::integrate(
      [omega](double t) { return cplx(std::log(t) * std::cos(omega * t), 0.0); }, breaks);
  const auto i_tlog = quadrature::integrate(
      [omega](double t) { return cplx(t * std::log(t) * std::cos(omega * t), 0.0); }, breaks);
  r.log_first = 2.0 * (i_log.value.real() + eps * (log_eps - 1.0));
  r.log_second = 2.0 / tm * (i_tlog.value.real() + 0.5 * eps * eps * (log_eps - 0.5));
  r.log_difference = r.log_first - r.log_second;
  r.log_limit = -pi / std::abs(omega);
  r.log_relative_residual = std::abs(r.log_difference - r.log_limit) / std::abs(r.log_limit);
  r.log_envelope = 2.0 * std::log(tm) * std::sin(omega * tm) / omega;

  // Odd kernels: integral over [-t_m, t_m] of odd(tau) e^{i omega tau} = 2i * integral of odd(tau) sin.
  const auto plain = quadrature::halfPeriodBreaks(0.0, tm, omega);
  const auto i_sin = quadrature::integrate([omega](double t) { return cplx(std::sin(omega * t), 0.0); }, plain);
  const auto i_tsin = quadrature::integrate([omega](double t) { return cplx(t * std::sin(omega * t), 0.0); }, plain);
  const double half = std::sin(0.5 * omega * tm);
  r.sign_numeric = 2.0 * i_sin.value.real();
  r.sign_exact = 4.0 * half * half / omega;  // (2/omega)(1 - cos omega t_m)
  r.sign_relative_residual =
      std::abs(r.sign_numeric - r.sign_exact) / std::max(std::abs(r.sign_exact), 1.0 / std::abs(omega));
  r.linear_numeric = 2.0 / tm * i_tsin.value.real();
  r.linear_leading = -2.0 / omega * std::cos(omega * tm);

  // Sine integral over k: oscillation frequency in k is tau.
  r.sinc_tau = sinc_tau;
  r.sinc_cutoff = sinc_cutoff > 0.0 ? sinc_cutoff : (sinc_tau != 0.0 ? 1000.0 / std::abs(sinc_tau) : 1000.0);
  if (sinc_tau != 0.0) {
    const auto i_sinc = quadrature::integrate(
        [sinc_tau](double k) { return cplx(k == 0.0 ? sinc_tau : std::sin(k * sinc_tau) / k, 0.0); },
        quadrature::halfPeriodBreaks(0.0, r.sinc_cutoff, sinc_tau));
    r.sinc_truncated = i_sinc.value.real();
  }
  r.sinc_tail = sincTail(r.sinc_cutoff, sinc_tau);
  r.sinc_corrected = r.sinc_truncated + r.sinc_tail;
  r.sinc_target = sinc_tau > 0.0 ? pi / 2.0 : (sinc_tau < 0.0 ? -pi / 2.0 : 0.0);
  r.sinc_residual = std::abs(r.sinc_corrected - r.sinc_target);
  return r;
}

}  // namespace qnoise::spectral
