#include "qnoise/spectrum_series.hpp"

#include <cmath>
#include <fmt/format.h>

#include "qnoise/error.hpp"

namespace qnoise {

std::string_view unitsName(SpectrumUnits u) {
  return u == SpectrumUnits::VoltsSquaredPerHz ? "V^2/Hz" : "dimensionless";
}

SpectrumUnits parseSpectrumUnits(std::string_view name) {
  if (name == "V^2/Hz" || name == "V2/Hz") return SpectrumUnits::VoltsSquaredPerHz;
  if (name == "dimensionless" || name == "1") return SpectrumUnits::Dimensionless;
  throw ValidationError(fmt::format("unknown spectrum units '{}'", name));
}

SpectrumSeries::SpectrumSeries(std::vector<double> f_hz, std::vector<double> values, SpectrumUnits units)
    : f_(std::move(f_hz)), values_(std::move(values)), units_(units) {
  if (f_.size() != values_.size()) {
    throw ValidationError(
        fmt::format("spectrum has {} frequencies but {} values", f_.size(), values_.size()));
  }
  for (std::size_t i = 0; i < f_.size(); ++i) {
    if (!std::isfinite(f_[i]) || !std::isfinite(values_[i])) {
      throw ValidationError(fmt::format("spectrum entry {} is not finite", i));
    }
    if (i > 0 && !(f_[i] > f_[i - 1])) {
      throw ValidationError(fmt::format("frequency grid not strictly increasing at index {}", i));
    }
  }
}

}  // namespace qnoise
