#pragma once

#include <string_view>
#include <vector>

namespace qnoise {

enum class SpectrumUnits { VoltsSquaredPerHz, Dimensionless };

std::string_view unitsName(SpectrumUnits u);
SpectrumUnits parseSpectrumUnits(std::string_view name);

/// Values on a strictly increasing frequency grid (Hz). Two-sided convention.
class SpectrumSeries {
 public:
  /// Throws ValidationError if sizes differ, the grid is not strictly
  /// increasing, or any entry is non-finite.
  SpectrumSeries(std::vector<double> f_hz, std::vector<double> values, SpectrumUnits units);

  const std::vector<double>& frequencies() const { return f_; }
  const std::vector<double>& values() const { return values_; }
  SpectrumUnits units() const { return units_; }
  std::size_t size() const { return f_.size(); }

 private:
  std::vector<double> f_;
  std::vector<double> values_;
  SpectrumUnits units_;
};

}  // namespace qnoise
