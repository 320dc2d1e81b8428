#pragma once

#include <string>
#include <string_view>

namespace qnoise::units {

/// Gaussian-CGS physical constants. The default instance holds CODATA 2018
/// values; other instances exist only so dimensional checks can recompute
/// quantities in a rescaled unit system.
class PhysicalConstants {
 public:
  /// Throws ValidationError unless every value is finite and positive.
  PhysicalConstants(double e_esu, double hbar_erg_s, double c_cm_s, double m0_g);

  /// CODATA 2018 in Gaussian CGS.
  static const PhysicalConstants& cgs();

  double e() const { return e_; }        // esu
  double hbar() const { return hbar_; }  // erg s
  double c() const { return c_; }        // cm / s
  double m0() const { return m0_; }      // g

 private:
  double e_, hbar_, c_, m0_;
};

/// A charge-carrier species; mass is stored relative to the free electron mass.
class CarrierSpecies {
 public:
  CarrierSpecies(std::string label, double mass_ratio);

  const std::string& label() const { return label_; }
  double massRatio() const { return mass_ratio_; }
  double mass(const PhysicalConstants& k = PhysicalConstants::cgs()) const {
    return mass_ratio_ * k.m0();
  }

 private:
  std::string label_;
  double mass_ratio_;
};

enum class Unit { Volt, Statvolt, Micrometer, Nanometer, Centimeter, Kilogram, Gram, ElectronVoltSecond, ErgSecond };

/// Accepts "V", "statV", "um", "nm", "cm", "kg", "g", "eV*s", "erg*s" (plus a
/// few spelling variants). Throws ValidationError for anything else.
Unit parseUnit(std::string_view name);
std::string_view unitName(Unit u);

/// Multiplies (or divides) by the defined factor for a supported pair:
/// V<->statV, um<->cm, nm<->cm, kg<->g, eV*s<->erg*s.
double convert(double value, Unit from, Unit to);
double convert(double value, std::string_view from, std::string_view to);

// Exact definitional factors.
inline constexpr double kVoltsPerStatvolt = 299.792458;
inline constexpr double kMicrometersPerCm = 1e4;
inline constexpr double kNanometersPerCm = 1e7;
inline constexpr double kGramsPerKilogram = 1e3;
inline constexpr double kErgPerElectronVolt = 1.602176634e-12;

inline double micrometersToCm(double um) { return convert(um, Unit::Micrometer, Unit::Centimeter); }
inline double nanometersToCm(double nm) { return convert(nm, Unit::Nanometer, Unit::Centimeter); }
inline double voltsToStatvolts(double v) { return convert(v, Unit::Volt, Unit::Statvolt); }

}  // namespace qnoise::units
