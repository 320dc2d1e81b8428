#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnoise/geometry.hpp"
#include "qnoise/spectrum_series.hpp"
#include "qnoise/units.hpp"

namespace qnoise::noisefloor {

struct NoiseFloorResult {
  double g;  // 1/cm
  double kappa;
  std::vector<std::pair<std::string, double>> per_species;
  std::optional<double> u0_statvolt;
};

/// kappa = 2 e^4 g / (pi hbar c^3) * sum_i 1/m_i. With a single species this
/// is the one-mass form 2 e^4 g / (pi m hbar c^3).
NoiseFloorResult noiseFloor(double g_per_cm, const std::vector<units::CarrierSpecies>& species,
                            std::optional<double> u0_volts = std::nullopt,
                            const units::PhysicalConstants& k = units::PhysicalConstants::cgs());

double kappa(double g_per_cm, const std::vector<units::CarrierSpecies>& species,
             const units::PhysicalConstants& k = units::PhysicalConstants::cgs());

/// S_F(f) = kappa U0^2 / |f| in V^2/Hz. Rejects f = 0 anywhere on the grid.
SpectrumSeries fundamentalSpectrum(double kappa, double u0_volts, const std::vector<double>& f_hz);

/// One sample of the comparison table. Published columns are optional so the
/// same record type serves user-supplied samples.
struct SampleRecord {
  std::string name;
  double width_um = 0.0;
  double length_um = 0.0;
  double thickness_nm = 0.0;
  double electron_mass_ratio = 0.06;
  double hole_mass_ratio = 0.09;
  std::optional<geometry::Vec3> probe1_um;
  std::optional<geometry::Vec3> probe2_um;
  std::optional<double> g_paper;
  std::optional<double> kappa_th_paper;
  std::optional<double> kappa_exp_paper;

  geometry::BoxSample box() const;
  geometry::ProbePair probes() const;
  std::vector<units::CarrierSpecies> species() const;
  /// Throws ValidationError naming the first bad field.
  void validate() const;
};

/// Parses a key=value descriptor. '#' starts a comment; blank lines are
/// ignored. Probe overrides are "x,y,z" in micrometers.
SampleRecord parseSampleDescriptor(const std::string& text);
SampleRecord loadSampleDescriptor(const std::filesystem::path& path);
/// All *.txt descriptors in a directory, sorted by file name.
std::vector<SampleRecord> loadSampleDirectory(const std::filesystem::path& dir);

struct ReportRow {
  std::string name;
  double g_calc;
  std::optional<double> g_paper;
  double kappa_calc;
  std::optional<double> kappa_paper;
  std::optional<double> kappa_exp;
  double kappa_over_g;                     // cm
  std::optional<double> exp_over_paper;    // kappa_exp / kappa_paper
  std::optional<double> exp_over_calc;     // kappa_exp / kappa_calc
  bool flagged;                            // |kappa_calc - kappa_paper| / kappa_paper > 0.10
};

inline constexpr double kFlagThreshold = 0.10;

std::vector<ReportRow> tableOneReport(const std::vector<SampleRecord>& records);
std::string reportCsv(const std::vector<ReportRow>& rows);

}  // namespace qnoise::noisefloor
