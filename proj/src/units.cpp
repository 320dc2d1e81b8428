#include "qnoise/units.hpp"

#include <cmath>
#include <fmt/format.h>

#include "qnoise/error.hpp"

namespace qnoise::units {

PhysicalConstants::PhysicalConstants(double e_esu, double hbar_erg_s, double c_cm_s, double m0_g)
    : e_(e_esu), hbar_(hbar_erg_s), c_(c_cm_s), m0_(m0_g) {
  for (double v : {e_, hbar_, c_, m0_}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError("physical constants must be finite and positive");
    }
  }
}

const PhysicalConstants& PhysicalConstants::cgs() {
  // e = 1.602176634e-19 C * 2.99792458e9 esu/C
  static const PhysicalConstants k(4.803204712570263e-10, 1.054571817e-27, 2.99792458e10,
                                   9.1093837015e-28);
  return k;
}

CarrierSpecies::CarrierSpecies(std::string label, double mass_ratio)
    : label_(std::move(label)), mass_ratio_(mass_ratio) {
  if (!(mass_ratio_ > 0.0) || std::isnan(mass_ratio_)) {
    throw ValidationError(
        fmt::format("mass_ratio of species '{}' must be positive (got {})", label_, mass_ratio_));
  }
}

Unit parseUnit(std::string_view name) {
  if (name == "V" || name == "volt") return Unit::Volt;
  if (name == "statV" || name == "statvolt") return Unit::Statvolt;
  if (name == "um" || name == "micrometer" || name == "μm") return Unit::Micrometer;
  if (name == "nm" || name == "nanometer") return Unit::Nanometer;
  if (name == "cm" || name == "centimeter") return Unit::Centimeter;
  if (name == "kg") return Unit::Kilogram;
  if (name == "g") return Unit::Gram;
  if (name == "eV*s" || name == "eV.s" || name == "eVs") return Unit::ElectronVoltSecond;
  if (name == "erg*s" || name == "erg.s" || name == "ergs") return Unit::ErgSecond;
  throw ValidationError(fmt::format("unknown unit '{}'", name));
}

std::string_view unitName(Unit u) {
  switch (u) {
    case Unit::Volt: return "V";
    case Unit::Statvolt: return "statV";
    case Unit::Micrometer: return "um";
    case Unit::Nanometer: return "nm";
    case Unit::Centimeter: return "cm";
    case Unit::Kilogram: return "kg";
    case Unit::Gram: return "g";
    case Unit::ElectronVoltSecond: return "eV*s";
    case Unit::ErgSecond: return "erg*s";
  }
  return "?";
}

namespace {

struct Factor {
  Unit larger;   // 1 larger = factor * smaller
  Unit smaller;
  double factor;
};

constexpr Factor kTable[] = {
    {Unit::Statvolt, Unit::Volt, kVoltsPerStatvolt},
    {Unit::Centimeter, Unit::Micrometer, kMicrometersPerCm},
    {Unit::Centimeter, Unit::Nanometer, kNanometersPerCm},
    {Unit::Kilogram, Unit::Gram, kGramsPerKilogram},
    {Unit::ElectronVoltSecond, Unit::ErgSecond, kErgPerElectronVolt},
};

}  // namespace

double convert(double value, Unit from, Unit to) {
  if (from == to) return value;
  // Multiply going down to the smaller unit, divide going up, so both
  // directions use the same rounded factor.
  for (const auto& f : kTable) {
    if (from == f.larger && to == f.smaller) return value * f.factor;
    if (from == f.smaller && to == f.larger) return value / f.factor;
  }
  throw ValidationError(
      fmt::format("unsupported unit conversion {} -> {}", unitName(from), unitName(to)));
}

double convert(double value, std::string_view from, std::string_view to) {
  return convert(value, parseUnit(from), parseUnit(to));
}

}  // namespace qnoise::units
