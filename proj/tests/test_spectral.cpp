#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qnoise/error.hpp"
#include "qnoise/spectral.hpp"

using namespace qnoise;
using namespace qnoise::spectral;
using std::numbers::pi;

namespace {

std::vector<SignalWindow> whiteEnsemble(std::size_t count, std::size_t n, double dt, double sigma,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<SignalWindow> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> s(n);
    for (auto& v : s) v = g(rng);
    out.emplace_back(dt, std::move(s));
  }
  return out;
}

// Triangular-window transform of the OU covariance, in closed form.
double ouSigma(double variance, double tau_c, double omega, double tm) {
  const std::complex<double> s(1.0 / tau_c, -omega);
  const auto e = std::exp(-s * tm);
  const auto first = (1.0 - e) / s;
  const auto second = (1.0 - e * (1.0 + s * tm)) / (s * s * tm);
  return 2.0 * variance * (first - second).real();
}

}  // namespace

TEST_CASE("trapezoidWeights") {
  const auto w = trapezoidWeights(5, 0.5);
  CHECK(w == std::vector<double>{0.25, 0.5, 0.5, 0.5, 0.25});
  CHECK(trapezoidWeights(1, 0.3) == std::vector<double>{0.3});
}

TEST_CASE("SignalWindow validation and length") {
  CHECK_THROWS_AS(SignalWindow(0.0, {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(SignalWindow(0.1, {1.0}), ValidationError);
  CHECK_THROWS_AS(SignalWindow(0.1, {1.0, NAN}), ValidationError);
  CHECK(SignalWindow(0.25, std::vector<double>(9, 0.0)).tm() == 2.0);
}

TEST_CASE("windowTransforms: zero, pure tone and parity") {
  const auto zero = windowTransforms(SignalWindow(0.1, std::vector<double>(64, 0.0)), 2.0);
  CHECK(zero.us == 0.0);
  CHECK(zero.uc == 0.0);

  // sin(omega t) over exactly 5 periods, 400 steps
  const double omega = 2.0 * pi, dt = 5.0 / 400.0;
  std::vector<double> s(401);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(omega * dt * static_cast<double>(i));
  const SignalWindow tone(dt, s);
  const auto t = windowTransforms(tone, omega);
  CHECK(t.us == doctest::Approx(tone.tm() / 2.0).epsilon(1e-12));
  CHECK(std::abs(t.uc) < 1e-12);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<double> r(100);
  for (auto& v : r) v = g(rng);
  const SignalWindow w(0.03, r);
  for (double om : {0.5, 3.0, 40.0}) {
    const auto p = windowTransforms(w, om);
    const auto m = windowTransforms(w, -om);
    CHECK(m.us == -p.us);
    CHECK(m.uc == p.uc);
  }
}

TEST_CASE("powerEstimate: white noise level") {
  const double sigma = 0.7, dt = 0.01;
  const std::size_t n = 256, count = 4000;
  const auto ens = whiteEnsemble(count, n, dt, sigma, 21);
  // E[Us^2 + Uc^2] = sigma^2 sum w_i^2 exactly
  const double expected = sigma * sigma * dt * (static_cast<double>(n) - 1.5) / (static_cast<double>(n) - 1.0);
  for (double f : {0.3, 7.0, 31.0}) {
    std::vector<double> per;
    for (const auto& w : ens) {
      const auto t = windowTransforms(w, 2.0 * pi * f);
      per.push_back((t.us * t.us + t.uc * t.uc) / w.tm());
    }
    double mean = 0.0, m2 = 0.0;
    for (double v : per) mean += v;
    mean /= static_cast<double>(count);
    for (double v : per) m2 += (v - mean) * (v - mean);
    const double se = std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
    const double est = powerEstimate(ens, f);
    CHECK(est == doctest::Approx(mean).epsilon(1e-12));
    CHECK(std::abs(est - expected) <= 4.0 * se);
  }
}

TEST_CASE("powerEstimate: worker count and ensemble order") {
  auto ens = whiteEnsemble(301, 64, 0.1, 1.0, 5);
  const double a = powerEstimate(ens, 1.3, 1);
  CHECK(powerEstimate(ens, 1.3, 4) == a);
  std::mt19937_64 rng(6);
  std::shuffle(ens.begin(), ens.end(), rng);
  CHECK(powerEstimate(ens, 1.3, 1) == doctest::Approx(a).epsilon(1e-13));
}

TEST_CASE("powerEstimate: inconsistent ensembles are rejected") {
  std::vector<SignalWindow> mixed{SignalWindow(0.1, std::vector<double>(8, 1.0)),
                                  SignalWindow(0.2, std::vector<double>(8, 1.0))};
  CHECK_THROWS_AS(powerEstimate(mixed, 1.0), ValidationError);
  std::vector<SignalWindow> sizes{SignalWindow(0.1, std::vector<double>(8, 1.0)),
                                  SignalWindow(0.1, std::vector<double>(9, 1.0))};
  CHECK_THROWS_AS(powerEstimate(sizes, 1.0), ValidationError);
  CHECK_THROWS_AS(powerEstimate({}, 1.0), ValidationError);
}

TEST_CASE("powerSpectrum") {
  const auto ens = whiteEnsemble(50, 128, 0.05, 1.0, 8);
  const auto s = powerSpectrum(ens, {0.5, 1.0, 2.0});
  REQUIRE(s.size() == 3);
  CHECK(s.values()[1] == powerEstimate(ens, 1.0));
  CHECK(s.units() == SpectrumUnits::VoltsSquaredPerHz);
  CHECK_THROWS_AS(powerSpectrum(ens, {1.0, 1.0}), ValidationError);
}

TEST_CASE("CovarianceModel: evaluation, parsing and parity") {
  const auto ou = CovarianceModel::ou(2.0, 0.5);
  CHECK(ou(0.0) == 2.0);
  CHECK(ou(0.5) == doctest::Approx(2.0 / std::numbers::e));
  CHECK(ou(-0.3) == ou(0.3));
  const auto lg = CovarianceModel::log(2.0, 0.5);
  CHECK(lg(1.0) == doctest::Approx(std::log(6.0)));
  CHECK(lg(-1.0) == lg(1.0));
  const auto sum = parseCovarianceModel("ou:variance=2,tau=0.5+log:a=2,tau0=0.5");
  CHECK(sum(0.7) == doctest::Approx(ou(0.7) + lg(0.7)));
  CHECK(sum.hasLogTerm());
  CHECK(ou.isPositiveDefinite());
  CHECK(parseCovarianceModel("zero")(3.0) == 0.0);
  CHECK_THROWS_AS(parseCovarianceModel("ou:variance=-1,tau=1"), ValidationError);
  CHECK_THROWS_AS(parseCovarianceModel("ou:variance=1"), ValidationError);
  CHECK_THROWS_AS(parseCovarianceModel("gauss:s=1"), ValidationError);
  CHECK_THROWS_AS(CovarianceModel::log(-0.5, 1.0), ValidationError);
}

TEST_CASE("sigmaOfF: OU against the closed form") {
  for (double omega : {0.1, 1.0, 10.0, -2.5}) {
    for (double tm : {3.0, 50.0, 1000.0}) {
      const auto r = sigmaOfF(CovarianceModel::ou(1.3, 1.0), omega, tm);
      INFO("omega=" << omega << " tm=" << tm);
      CHECK(r.value == doctest::Approx(ouSigma(1.3, 1.0, omega, tm)).epsilon(1e-10));
      CHECK(std::abs(r.imag) <= 1e-9 * std::abs(r.value));
      CHECK(r.two_term == doctest::Approx(r.value).epsilon(1e-9));
    }
  }
  // long windows approach the Lorentzian within 0.1%
  const double lor = 2.0 / (1.0 + 4.0);
  CHECK(sigmaOfF(CovarianceModel::ou(1.0, 1.0), 2.0, 2000.0).value == doctest::Approx(lor).epsilon(1e-3));
}

TEST_CASE("sigmaOfF: Log model against independent quadrature") {
  // 2 int_0^T (1 - t/T) ln(a + t^2/tau0^2) cos(omega t) dt, multiprecision Gauss-Legendre
  CHECK(sigmaOfF(CovarianceModel::log(1.0, 1.0), 1.0, 200.0).value ==
        doctest::Approx(-2.35719918560886894).epsilon(1e-10));
  CHECK(sigmaOfF(CovarianceModel::log(2.0, 0.5), 2.5, 100.0).value ==
        doctest::Approx(-0.43589209306776680).epsilon(1e-10));
  // the infinite-window transform -2 pi e^{-|omega| tau0} / |omega|
  const double omega = 1.0;
  CHECK(sigmaOfF(CovarianceModel::log(1.0, 1.0), omega, 2e4).value ==
        doctest::Approx(-2.0 * pi * std::exp(-omega) / omega).epsilon(5e-3));
}

TEST_CASE("sigmaOfF: linearity, parity and validation") {
  const auto a = CovarianceModel::ou(1.0, 0.3);
  const auto b = CovarianceModel::log(1.5, 2.0);
  const auto s = CovarianceModel::sum({a, b});
  const double sa = sigmaOfF(a, 1.7, 40.0).value, sb = sigmaOfF(b, 1.7, 40.0).value;
  CHECK(sigmaOfF(s, 1.7, 40.0).value == doctest::Approx(sa + sb).epsilon(1e-10));
  CHECK(sigmaOfF(s, -1.7, 40.0).value == doctest::Approx(sa + sb).epsilon(1e-12));
  CHECK(sigmaOfF(CovarianceModel::zero(), 1.0, 10.0).value == 0.0);
  CHECK_THROWS_AS(sigmaOfF(a, 0.0, 10.0), ValidationError);
  CHECK_THROWS_AS(sigmaOfF(a, 1.0, -1.0), ValidationError);
}

TEST_CASE("kernelAsymptotics: ln|tau| kernels against multiprecision values") {
  struct Row {
    double omega, tm, a, b;
  };
  const Row rows[] = {{1.0, 1000.0, 8.2832967784469868594, 11.431810113301963989},
                      {2.5, 400.0, 2.707189063886127789, 3.9669151882252938693},
                      {1.0, 1e5, -2.318466147770578387, 0.82288793878843439462}};
  for (const auto& r : rows) {
    const auto k = kernelAsymptotics(r.omega, r.tm);
    INFO("omega=" << r.omega << " tm=" << r.tm);
    CHECK(k.log_first == doctest::Approx(r.a).epsilon(1e-9));
    CHECK(k.log_second == doctest::Approx(r.b).epsilon(1e-9));
    CHECK(k.log_limit == doctest::Approx(-pi / r.omega).epsilon(1e-15));
    CHECK(k.log_difference == doctest::Approx(r.a - r.b).epsilon(1e-8));
    CHECK(k.log_envelope == doctest::Approx(2.0 * std::log(r.tm) * std::sin(r.omega * r.tm) / r.omega));
  }
}

TEST_CASE("kernelAsymptotics: sign and linear kernels") {
  for (double omega : {0.3, 1.0, 7.5}) {
    for (double tm : {10.0, 333.3, 1e4}) {
      const auto k = kernelAsymptotics(omega, tm);
      CHECK(k.sign_exact == doctest::Approx(2.0 / omega * (1.0 - std::cos(omega * tm))));
      CHECK(k.sign_relative_residual <= 1e-10);
      // (1/T) int tau sin(omega tau) over [-T, T]
      const double linear = -2.0 * std::cos(omega * tm) / omega + 2.0 * std::sin(omega * tm) / (omega * omega * tm);
      CHECK(std::abs(k.linear_numeric - linear) <= 1e-10 * std::max(1.0, std::abs(linear)));
      CHECK(k.linear_leading == doctest::Approx(-2.0 * std::cos(omega * tm) / omega));
    }
  }
  const auto neg = kernelAsymptotics(-1.0, 50.0);
  const auto pos = kernelAsymptotics(1.0, 50.0);
  CHECK(neg.sign_numeric == doctest::Approx(-pos.sign_numeric));
  CHECK(neg.log_difference == doctest::Approx(pos.log_difference));
  CHECK_THROWS_AS(kernelAsymptotics(0.0, 10.0), ValidationError);
  CHECK_THROWS_AS(kernelAsymptotics(1.0, 0.0), ValidationError);
}

TEST_CASE("sine integral tail") {
  // pi/2 - Si(x) at x = 50, 1000, 12345.5
  const std::pair<double, double> ref[] = {{50.0, 0.0191792543089607245},
                                           {1000.0, 0.000563204826125401083},
                                           {12345.5, 0.0000465082242763873526}};
  for (const auto& [x, tail] : ref) {
    CHECK(std::abs(sincTail(x, 1.0) - tail) <= 3.0 / (x * x * x));
    CHECK(sincTail(x / 4.0, 4.0) == doctest::Approx(sincTail(x, 1.0)).epsilon(1e-12));
    CHECK(sincTail(x, -1.0) == -sincTail(x, 1.0));
  }
  for (double tau : {1.0, 0.37, -2.0}) {
    const auto k = kernelAsymptotics(1.0, 10.0, tau);
    CHECK(k.sinc_target == doctest::Approx(std::copysign(pi / 2.0, tau)));
    CHECK(k.sinc_residual <= 1e-8);
    CHECK(k.sinc_corrected == doctest::Approx(k.sinc_truncated + k.sinc_tail));
  }
}
