#include "qnoise/noisefloor.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qnoise/error.hpp"

namespace qnoise::noisefloor {

using geometry::Vec3;

NoiseFloorResult noiseFloor(double g_per_cm, const std::vector<units::CarrierSpecies>& species,
                            std::optional<double> u0_volts, const units::PhysicalConstants& k) {
  if (!std::isfinite(g_per_cm) || g_per_cm <= 0.0) {
    throw ValidationError(fmt::format("g must be finite and positive (got {})", g_per_cm));
  }
  if (species.empty()) throw ValidationError("at least one carrier species is required");

  const double e2 = k.e() * k.e();
  const double prefactor = 2.0 * e2 * e2 * g_per_cm / (std::numbers::pi * k.hbar() * k.c() * k.c() * k.c());
  NoiseFloorResult out{g_per_cm, 0.0, {}, std::nullopt};
  for (const auto& s : species) {
    const double part = prefactor / s.mass(k);
    out.per_species.emplace_back(s.label(), part);
    out.kappa += part;
  }
  if (u0_volts) {
    if (!std::isfinite(*u0_volts)) throw ValidationError("u0 must be finite");
    out.u0_statvolt = units::voltsToStatvolts(*u0_volts);
  }
  return out;
}

double kappa(double g_per_cm, const std::vector<units::CarrierSpecies>& species,
             const units::PhysicalConstants& k) {
  return noiseFloor(g_per_cm, species, std::nullopt, k).kappa;
}

SpectrumSeries fundamentalSpectrum(double kappa, double u0_volts, const std::vector<double>& f_hz) {
  if (!std::isfinite(kappa) || kappa < 0.0) throw ValidationError("kappa must be finite and nonnegative");
  if (!std::isfinite(u0_volts)) throw ValidationError("u0 must be finite");
  std::vector<double> values;
  values.reserve(f_hz.size());
  const double level = kappa * u0_volts * u0_volts;
  for (std::size_t i = 0; i < f_hz.size(); ++i) {
    if (f_hz[i] == 0.0) {
      throw ValidationError(fmt::format("frequency grid contains f = 0 at index {} (singular point)", i));
    }
    values.push_back(level / std::abs(f_hz[i]));
  }
  return {f_hz, std::move(values), SpectrumUnits::VoltsSquaredPerHz};
}

// ---------------------------------------------------------------------------
// Sample descriptors

geometry::BoxSample SampleRecord::box() const {
  return geometry::BoxSample::fromMicrometers(width_um, length_um, thickness_nm);
}

geometry::ProbePair SampleRecord::probes() const {
  const auto b = box();
  if (!probe1_um && !probe2_um) return geometry::ProbePair::endEdgeMidpoints(b);
  const auto def = geometry::ProbePair::endEdgeMidpoints(b);
  const double s = 1.0 / units::kMicrometersPerCm;
  const Vec3 p1 = probe1_um ? s * *probe1_um : def.first();
  const Vec3 p2 = probe2_um ? s * *probe2_um : def.second();
  return geometry::ProbePair::explicitPoints(b, p1, p2);
}

std::vector<units::CarrierSpecies> SampleRecord::species() const {
  return {units::CarrierSpecies("electron", electron_mass_ratio),
          units::CarrierSpecies("hole", hole_mass_ratio)};
}

void SampleRecord::validate() const {
  auto positive = [](double v, const char* field) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError(fmt::format("{} must be finite and positive (got {})", field, v));
    }
  };
  auto nonnegative = [](const std::optional<double>& v, const char* field) {
    if (v && (!std::isfinite(*v) || *v < 0.0)) {
      throw ValidationError(fmt::format("{} must be nonnegative (got {})", field, *v));
    }
  };
  if (name.empty()) throw ValidationError("name must not be empty");
  positive(width_um, "width_um");
  positive(length_um, "length_um");
  positive(thickness_nm, "thickness_nm");
  positive(electron_mass_ratio, "electron_mass_ratio");
  positive(hole_mass_ratio, "hole_mass_ratio");
  nonnegative(g_paper, "g_paper");
  nonnegative(kappa_th_paper, "kappa_th_paper");
  nonnegative(kappa_exp_paper, "kappa_exp_paper");
  try {
    (void)probes();
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("probe1_um/probe2_um: {}", e.what()));
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parseNumber(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("{}: '{}' is not a number", key, value));
  }
}

Vec3 parsePoint(const std::string& value, const std::string& key) {
  std::stringstream ss(value);
  std::string item;
  double c[3];
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 3) break;
    c[i++] = parseNumber(trim(item), key);
  }
  if (i != 3 || std::getline(ss, item, ',')) {
    throw ValidationError(fmt::format("{}: expected three comma-separated coordinates", key));
  }
  return {c[0], c[1], c[2]};
}

}  // namespace

SampleRecord parseSampleDescriptor(const std::string& text) {
  SampleRecord r;
  bool have_w = false, have_l = false, have_a = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(fmt::format("line {}: expected key=value", lineno));
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key == "name") {
      r.name = value;
    } else if (key == "width_um") {
      r.width_um = parseNumber(value, key);
      have_w = true;
    } else if (key == "length_um") {
      r.length_um = parseNumber(value, key);
      have_l = true;
    } else if (key == "thickness_nm") {
      r.thickness_nm = parseNumber(value, key);
      have_a = true;
    } else if (key == "electron_mass_ratio") {
      r.electron_mass_ratio = parseNumber(value, key);
    } else if (key == "hole_mass_ratio") {
      r.hole_mass_ratio = parseNumber(value, key);
    } else if (key == "probe1_um") {
      r.probe1_um = parsePoint(value, key);
    } else if (key == "probe2_um") {
      r.probe2_um = parsePoint(value, key);
    } else if (key == "g_paper") {
      r.g_paper = parseNumber(value, key);
    } else if (key == "kappa_th_paper") {
      r.kappa_th_paper = parseNumber(value, key);
    } else if (key == "kappa_exp_paper") {
      r.kappa_exp_paper = parseNumber(value, key);
    } else {
      throw ValidationError(fmt::format("line {}: unknown key '{}'", lineno, key));
    }
  }
  if (!have_w) throw ValidationError("width_um is missing");
  if (!have_l) throw ValidationError("length_um is missing");
  if (!have_a) throw ValidationError("thickness_nm is missing");
  r.validate();
  return r;
}

SampleRecord loadSampleDescriptor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot read sample descriptor {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto r = parseSampleDescriptor(ss.str());
    return r;
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<SampleRecord> loadSampleDirectory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ValidationError(fmt::format("sample directory {} does not exist", dir.string()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SampleRecord> out;
  for (const auto& f : files) out.push_back(loadSampleDescriptor(f));
  return out;
}

// ---------------------------------------------------------------------------
// Table report

std::vector<ReportRow> tableOneReport(const std::vector<SampleRecord>& records) {
  std::vector<ReportRow> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) {
    rec.validate();
    const double g = geometry::geometricFactor(rec.box(), rec.probes());
    const double k = kappa(g, rec.species());
    ReportRow row{rec.name, g, rec.g_paper, k, rec.kappa_th_paper, rec.kappa_exp_paper, k / g,
                  std::nullopt, std::nullopt, false};
    if (rec.kappa_exp_paper) {
      if (rec.kappa_th_paper && *rec.kappa_th_paper > 0.0) {
        row.exp_over_paper = *rec.kappa_exp_paper / *rec.kappa_th_paper;
      }
      row.exp_over_calc = *rec.kappa_exp_paper / k;
    }
    if (rec.kappa_th_paper && *rec.kappa_th_paper > 0.0) {
      row.flagged = std::abs(k - *rec.kappa_th_paper) / *rec.kappa_th_paper > kFlagThreshold;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string reportCsv(const std::vector<ReportRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{:.6g}", *v) : std::string(); };
  std::string out =
      "name,g_calc_per_cm,g_paper_per_cm,kappa_calc,kappa_paper,kappa_exp,kappa_over_g_cm,"
      "kappa_exp_over_paper,kappa_exp_over_calc,flag\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{:.6g},{},{:.6g},{},{},{:.6g},{},{},{}\n", r.name, r.g_calc, opt(r.g_paper),
                       r.kappa_calc, opt(r.kappa_paper), opt(r.kappa_exp), r.kappa_over_g,
                       opt(r.exp_over_paper), opt(r.exp_over_calc), r.flagged ? "FLAG" : "ok");
  }
  return out;
}

}  // namespace qnoise::noisefloor
