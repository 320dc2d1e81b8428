#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qnoise/error.hpp"
#include "qnoise/processlab.hpp"

using namespace qnoise;
using namespace qnoise::processlab;
using spectral::CovarianceModel;
using spectral::SignalWindow;

namespace {

struct Stats {
  double mean;
  double se;
};

Stats meanAndError(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= static_cast<double>(v.size() - 1);
  return {m, std::sqrt(s2 / static_cast<double>(v.size()))};
}

SynthesisSpec ouSpec(std::size_t n, double dt, std::uint64_t seed) {
  return {CovarianceModel::ou(1.0, 1.0), n, dt, seed};
}

}  // namespace

TEST_CASE("synthesis is deterministic per seed and window index") {
  const Synthesizer a(ouSpec(256, 0.05, 17));
  const Synthesizer b(ouSpec(256, 0.05, 17));
  CHECK(a.window(0).samples() == b.window(0).samples());
  CHECK(a.window(5).samples() == b.window(5).samples());
  CHECK(a.window(4).samples() != a.window(5).samples());
  const auto ens1 = a.ensemble(9, 1);
  const auto ens3 = a.ensemble(9, 3);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(ens1[i].samples() == ens3[i].samples());
    CHECK(ens1[i].samples() == a.window(i).samples());
  }
  const auto tail = a.windows(3, 5, 2);
  REQUIRE(tail.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(tail[i].samples() == ens1[3 + i].samples());
  CHECK(a.windows(4, 0).empty());
  CHECK(synthesize(ouSpec(256, 0.05, 17)).samples() == a.window(0).samples());
  CHECK(Synthesizer(ouSpec(256, 0.05, 18)).window(0).samples() != a.window(0).samples());
  CHECK(a.window(0).dt() == 0.05);
  CHECK(a.window(0).size() == 256);
}

TEST_CASE("OU embedding needs no clipping") {
  const Synthesizer s(ouSpec(1024, 0.01, 1));
  CHECK(s.diagnostics().size == 2048);
  CHECK(s.diagnostics().clipped_fraction == 0.0);
  CHECK(s.diagnostics().min_eigenvalue >= 0.0);
  for (double l : s.eigenvalues()) CHECK(l >= 0.0);
}

TEST_CASE("OU autocovariance at lag 0 and lag tau_c") {
  const double dt = 0.01;
  const std::size_t n = 1024, lag = 100;
  const auto ens = Synthesizer(ouSpec(n, dt, 2)).ensemble(1000, 4);
  std::vector<double> c0, c1;
  for (const auto& w : ens) {
    const auto& x = w.samples();
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) s0 += x[i] * x[i];
    for (std::size_t i = 0; i + lag < n; ++i) s1 += x[i] * x[i + lag];
    c0.push_back(s0 / static_cast<double>(n));
    c1.push_back(s1 / static_cast<double>(n - lag));
  }
  const auto z = meanAndError(c0), one = meanAndError(c1);
  CHECK(std::abs(z.mean - 1.0) <= 4.0 * z.se);
  CHECK(std::abs(one.mean - std::exp(-1.0)) <= 4.0 * one.se);
}

TEST_CASE("samples are Gaussian and stationary") {
  // every 400th sample: lag 4 tau_c, nearly independent
  const auto ens = Synthesizer(ouSpec(4096, 0.01, 3)).ensemble(400, 4);
  std::vector<double> xs;
  std::vector<double> first, second, dvar;
  for (const auto& w : ens) {
    const auto& x = w.samples();
    for (std::size_t i = 0; i < x.size(); i += 400) xs.push_back(x[i]);
    double m1 = 0.0, m2 = 0.0, v1 = 0.0, v2 = 0.0;
    const std::size_t h = x.size() / 2;
    for (std::size_t i = 0; i < h; ++i) {
      m1 += x[i];
      v1 += x[i] * x[i];
      m2 += x[h + i];
      v2 += x[h + i] * x[h + i];
    }
    first.push_back((m1 - m2) / static_cast<double>(h));
    dvar.push_back((v1 - v2) / static_cast<double>(h));
  }
  const double N = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= N;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = (x - m) * (x - m);
    m2 += d;
    m4 += d * d;
  }
  m2 /= N;
  m4 /= N;
  const double excess = m4 / (m2 * m2) - 3.0;
  CHECK(std::abs(excess) <= 4.0 * std::sqrt(24.0 / N));
  CHECK(std::abs(m) <= 4.0 * std::sqrt(m2 / N) * 1.2);

  const auto dm = meanAndError(first), dv = meanAndError(dvar);
  CHECK(std::abs(dm.mean) <= 4.0 * dm.se);
  CHECK(std::abs(dv.mean) <= 4.0 * dv.se);
}

TEST_CASE("white power law gives a flat spectrum") {
  const PowerLaw flat{0.0, 1e-3, 0.5, 2.0};
  const auto ens = Synthesizer({flat, 512, 1.0, 4}).ensemble(2000, 4);
  for (double f : {0.02, 0.1, 0.3, 0.45}) {
    std::vector<double> per;
    for (const auto& w : ens) {
      const auto t = spectral::windowTransforms(w, 2.0 * std::numbers::pi * f);
      per.push_back((t.us * t.us + t.uc * t.uc) / w.tm());
    }
    const auto s = meanAndError(per);
    // trapezoid end weights shave (n - 1.5)/(n - 1) off the white level
    CHECK(std::abs(s.mean - 2.0 * 510.5 / 511.0) <= 4.0 * s.se);
  }
}

TEST_CASE("1/f synthesis recovers its exponent") {
  const PowerLaw law{1.0, 1e-3, 0.5};
  const auto ens = Synthesizer({law, 4096, 1.0, 5}).ensemble(2000, 0);
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(0.01 * std::pow(10.0, i / 15.0));
  const auto s = spectral::powerSpectrum(ens, grid, 0);
  CHECK(slopeFit(s, 0.01, 0.1) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("PowerLaw target") {
  const PowerLaw p{1.2, 0.01, 0.3, 3.0};
  CHECK(p(0.1) == doctest::Approx(3.0 * std::pow(0.1, -1.2)));
  CHECK(p(-0.1) == p(0.1));
  CHECK(p(0.0) == p(0.01));
  CHECK(p(0.001) == p(0.01));
  CHECK(p(0.4) == p(0.3));
}

TEST_CASE("slopeFit on exact power laws") {
  std::vector<double> f, one, two, flat;
  for (int i = 0; i < 20; ++i) {
    const double x = 0.5 * std::pow(1.3, i);
    f.push_back(x);
    one.push_back(1.0 / x);
    two.push_back(1.0 / (x * x));
    flat.push_back(4.0);
  }
  using qnoise::SpectrumSeries;
  using qnoise::SpectrumUnits;
  CHECK(std::abs(slopeFit(SpectrumSeries(f, one, SpectrumUnits::Dimensionless), 0.1, 1e9) - 1.0) <= 1e-12);
  CHECK(std::abs(slopeFit(SpectrumSeries(f, two, SpectrumUnits::Dimensionless), 0.1, 1e9) - 2.0) <= 1e-12);
  CHECK(std::abs(slopeFit(SpectrumSeries(f, flat, SpectrumUnits::Dimensionless), 0.1, 1e9)) <= 1e-12);
  // only 5 points in range
  CHECK_THROWS_AS(slopeFit(SpectrumSeries(f, one, SpectrumUnits::Dimensionless), 0.5, 1.5), ValidationError);
  auto neg = one;
  neg[10] = -1.0;
  CHECK_THROWS_AS(slopeFit(SpectrumSeries(f, neg, SpectrumUnits::Dimensionless), 0.1, 1e9), ValidationError);
}

TEST_CASE("synthesis spec validation") {
  const auto bad = [](SynthesisSpec s) { CHECK_THROWS_AS(Synthesizer{s}, ValidationError); };
  bad({CovarianceModel::ou(1.0, 1.0), 1000, 0.1, 1});
  bad({CovarianceModel::ou(1.0, 1.0), 32, 0.1, 1});
  bad({CovarianceModel::ou(1.0, 1.0), 256, 0.0, 1});
  bad({CovarianceModel::log(1.0, 1.0), 256, 0.1, 1});
  bad({CovarianceModel::sum({CovarianceModel::ou(1.0, 1.0), CovarianceModel::log(1.0, 1.0)}), 256, 0.1, 1});
  bad({PowerLaw{2.5, 0.01, 0.5}, 256, 1.0, 1});
  bad({PowerLaw{-0.1, 0.01, 0.5}, 256, 1.0, 1});
  bad({PowerLaw{1.0, 0.01, 0.6}, 256, 1.0, 1});
  bad({PowerLaw{1.0, 0.2, 0.1}, 256, 1.0, 1});
  bad({PowerLaw{1.0, 0.0, 0.1}, 256, 1.0, 1});
  CHECK_NOTHROW(Synthesizer({PowerLaw{2.0, 0.01, 0.5}, 64, 1.0, 1}));
}
