#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "qnoise/spectral.hpp"
#include "qnoise/spectrum_series.hpp"

namespace qnoise::io {

// Signal CSV: a "# dt=<seconds>" line, a header row naming the windows, then
// one row per sample with one column per window. Values in volts.
//
//   # dt=0.02
//   window_0,window_1
//   0.125,-0.5
//   ...
void writeWindows(std::ostream& out, std::span<const spectral::SignalWindow> windows);
std::vector<spectral::SignalWindow> readWindows(std::istream& in);
std::vector<spectral::SignalWindow> readWindows(const std::filesystem::path& path);

// Spectrum CSV: an optional "# units=<V^2/Hz|dimensionless>" line, the header
// "f_hz,value", then one row per grid point.
void writeSpectrum(std::ostream& out, const SpectrumSeries& s);
SpectrumSeries readSpectrum(std::istream& in);
SpectrumSeries readSpectrum(const std::filesystem::path& path);

}  // namespace qnoise::io
