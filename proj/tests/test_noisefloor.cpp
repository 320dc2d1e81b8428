#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qnoise/error.hpp"
#include "qnoise/noisefloor.hpp"

using namespace qnoise;
using namespace qnoise::noisefloor;
using units::CarrierSpecies;

namespace {

std::vector<CarrierSpecies> inGaAs() { return {CarrierSpecies("electron", 0.06), CarrierSpecies("hole", 0.09)}; }

}  // namespace

TEST_CASE("kappa: published values for V1 and V2") {
  CHECK(kappa(9630.0, inGaAs()) == doctest::Approx(3.5e-10).epsilon(0.03));
  CHECK(kappa(5140.0, inGaAs()) == doctest::Approx(1.9e-10).epsilon(0.03));
}

TEST_CASE("kappa: hand-evaluated CGS arithmetic") {
  // 2 e^4 g (1/m_n + 1/m_p) / (pi hbar c^3), CODATA 2018 CGS, worked by hand:
  // e^4 = 5.32275e-38, hbar c^3 = 2.84134e4, 1/m0 (1/0.06 + 1/0.09) = 3.04937e28
  const double by_hand = 2.0 * 5.32275e-38 * 9630.0 * 3.04937e28 / (std::numbers::pi * 2.84134e4);
  CHECK(kappa(9630.0, inGaAs()) == doctest::Approx(by_hand).epsilon(1e-4));
  CHECK(kappa(9630.0, inGaAs()) == doctest::Approx(3.50e-10).epsilon(0.005));
}

TEST_CASE("kappa: linear in g and additive in 1/m") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> gdist(1.0, 1e5), mdist(0.01, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double g = gdist(rng);
    const CarrierSpecies a("a", mdist(rng)), b("b", mdist(rng));
    const double ka = kappa(g, {a}), kb = kappa(g, {b});
    CHECK(kappa(g, {a, b}) == doctest::Approx(ka + kb).epsilon(1e-14));
    CHECK(kappa(3.0 * g, {a}) == doctest::Approx(3.0 * ka).epsilon(1e-14));
    // single species is the one-mass formula
    const auto& k = units::PhysicalConstants::cgs();
    const double one_mass = 2.0 * std::pow(k.e(), 4) * g / (std::numbers::pi * a.mass() * k.hbar() * std::pow(k.c(), 3));
    CHECK(ka == doctest::Approx(one_mass).epsilon(1e-13));
  }
}

TEST_CASE("kappa: dimensionless under a change of mechanical units") {
  // Recompute in kg-m-s with a Gaussian charge unit kg^(1/2) m^(3/2) / s.
  const auto& cgs = units::PhysicalConstants::cgs();
  const double e_mks = cgs.e() * std::sqrt(1e-3) * std::pow(1e-2, 1.5);
  const units::PhysicalConstants mks(e_mks, cgs.hbar() * 1e-7, cgs.c() * 1e-2, cgs.m0() * 1e-3);
  const double g = 1234.5;
  CHECK(kappa(g * 100.0, inGaAs(), mks) == doctest::Approx(kappa(g, inGaAs())).epsilon(1e-12));
}

TEST_CASE("kappa: heavy species are suppressed") {
  const double light = kappa(1000.0, {CarrierSpecies("x", 1.0)});
  CHECK(kappa(1000.0, {CarrierSpecies("x", 1e12)}) == doctest::Approx(light * 1e-12));
  CHECK(kappa(1000.0, {CarrierSpecies("x", 1e300)}) < 1e-300);
}

TEST_CASE("kappa: rejects empty species and bad g") {
  CHECK_THROWS_AS(kappa(10.0, {}), ValidationError);
  CHECK_THROWS_AS(kappa(0.0, inGaAs()), ValidationError);
  CHECK_THROWS_AS(kappa(-5.0, inGaAs()), ValidationError);
}

TEST_CASE("noiseFloor: per-species contributions sum to kappa") {
  const auto r = noiseFloor(9630.0, inGaAs(), 1.0);
  REQUIRE(r.per_species.size() == 2);
  CHECK(r.per_species[0].first == "electron");
  CHECK(r.per_species[0].second + r.per_species[1].second == r.kappa);
  CHECK(r.per_species[0].second / r.per_species[1].second == doctest::Approx(0.09 / 0.06));
  REQUIRE(r.u0_statvolt);
  CHECK(*r.u0_statvolt == doctest::Approx(1.0 / 299.792458));
}

TEST_CASE("fundamentalSpectrum: 1/|f| law") {
  const auto s = fundamentalSpectrum(3.5e-10, 1.0, {1.0});
  CHECK(s.values()[0] == doctest::Approx(3.5e-10));
  CHECK(s.units() == SpectrumUnits::VoltsSquaredPerHz);

  const std::vector<double> grid{-8.0, -2.5, -1.0, 0.3, 1.0, 2.0, 4.0, 17.0};
  const double k = 2.7e-11, u0 = 0.35;
  const auto a = fundamentalSpectrum(k, u0, grid);
  const auto twice = fundamentalSpectrum(k, 2.0 * u0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(twice.values()[i] == 4.0 * a.values()[i]);
    CHECK(std::abs(grid[i]) * a.values()[i] == doctest::Approx(k * u0 * u0).epsilon(1e-15));
  }
  // even in f, halves when f doubles
  CHECK(a.values()[2] == a.values()[4]);
  CHECK(a.values()[5] == 0.5 * a.values()[4]);
  CHECK(a.values()[6] == 0.5 * a.values()[5]);
}

TEST_CASE("fundamentalSpectrum: f = 0 is singular") {
  CHECK_THROWS_WITH_AS(fundamentalSpectrum(1e-10, 1.0, {-1.0, 0.0, 1.0}), doctest::Contains("f = 0"),
                       ValidationError);
}

TEST_CASE("sample descriptors") {
  const auto r = parseSampleDescriptor(
      "# comment\nname = V1\nwidth_um = 1\nlength_um = 2.2\nthickness_nm = 10  # inline\n"
      "electron_mass_ratio=0.06\nhole_mass_ratio=0.09\ng_paper=9630\n");
  CHECK(r.name == "V1");
  CHECK(r.length_um == 2.2);
  CHECK(r.g_paper.value() == 9630.0);
  CHECK_FALSE(r.kappa_exp_paper.has_value());
  CHECK(r.probes().placement() == geometry::ProbePlacement::EndEdgeMidpoints);

  CHECK_THROWS_WITH_AS(parseSampleDescriptor("name=x\nwidth_um=-1\nlength_um=2\nthickness_nm=10\n"),
                       doctest::Contains("width_um"), ValidationError);
  CHECK_THROWS_WITH_AS(parseSampleDescriptor("name=x\nlength_um=2\nthickness_nm=10\n"),
                       doctest::Contains("width_um"), ValidationError);
  CHECK_THROWS_WITH_AS(parseSampleDescriptor("name=x\nwidth_um=abc\nlength_um=2\nthickness_nm=10\n"),
                       doctest::Contains("width_um"), ValidationError);
  CHECK_THROWS_WITH_AS(parseSampleDescriptor("name=x\nwidth_um=1\nlength_um=2\nthickness_nm=10\ncolour=red\n"),
                       doctest::Contains("colour"), ValidationError);

  const auto probes = parseSampleDescriptor(
      "name=p\nwidth_um=1\nlength_um=2\nthickness_nm=10\nprobe1_um=0.5,0.5,0.005\nprobe2_um=1.5,0.5,0.005\n");
  const auto pp = probes.probes();
  CHECK(pp.placement() == geometry::ProbePlacement::Explicit);
  CHECK(pp.first().x == doctest::Approx(0.5e-4));
  CHECK_THROWS_AS(parseSampleDescriptor("name=p\nwidth_um=1\nlength_um=2\nthickness_nm=10\nprobe1_um=5,0,0\n"),
                  ValidationError);
}

TEST_CASE("tableOneReport: flags, ratios and empty input") {
  CHECK(tableOneReport({}).empty());

  const auto records = loadSampleDirectory(QNOISE_DATA_DIR "/samples");
  REQUIRE(records.size() == 5);
  const auto rows = tableOneReport(records);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].name == "V1");
  CHECK(rows[4].name == "V80");
  for (const auto& r : rows) CHECK(r.kappa_over_g == doctest::Approx(3.64e-14).epsilon(0.01));
  for (int i = 0; i < 4; ++i) CHECK_FALSE(rows[i].flagged);
  CHECK(rows[4].flagged);
  // the published V80 ratio sits well below the others
  CHECK(*rows[4].kappa_paper / *rows[4].g_paper == doctest::Approx(2.4e-14).epsilon(0.02));
  CHECK(rows[0].exp_over_paper.value() == doctest::Approx(5.0));

  const auto csv = reportCsv(rows);
  CHECK(csv.rfind("name,g_calc_per_cm,g_paper_per_cm,kappa_calc", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
