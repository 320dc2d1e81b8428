#include "qnoise/signal_io.hpp"

#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "qnoise/error.hpp"

namespace qnoise::io {

namespace {

std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    while (!item.empty() && (item.back() == '\r' || item.back() == ' ')) item.pop_back();
    std::size_t b = 0;
    while (b < item.size() && item[b] == ' ') ++b;
    out.push_back(item.substr(b));
  }
  return out;
}

double parseCell(const std::string& s, std::size_t row, std::size_t col) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(fmt::format("csv row {} column {}: '{}' is not a number", row, col, s));
}

// Parses "# key=value" comment lines into (key, value); other comments ignored.
std::optional<std::pair<std::string, std::string>> commentKeyValue(const std::string& line) {
  std::string body = line.substr(1);
  const auto b = body.find_first_not_of(' ');
  if (b == std::string::npos) return std::nullopt;
  body = body.substr(b);
  while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();
  const auto eq = body.find('=');
  if (eq == std::string::npos) return std::nullopt;
  return std::make_pair(body.substr(0, eq), body.substr(eq + 1));
}

std::ifstream openForRead(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot read {}", path.string()));
  return in;
}

}  // namespace

void writeWindows(std::ostream& out, std::span<const spectral::SignalWindow> windows) {
  if (windows.empty()) throw ValidationError("no windows to write");
  const auto n = windows.front().size();
  for (const auto& w : windows) {
    if (w.size() != n || w.dt() != windows.front().dt()) throw ValidationError("windows differ in shape");
  }
  out << fmt::format("# dt={:.17g}\n", windows.front().dt());
  for (std::size_t j = 0; j < windows.size(); ++j) out << (j ? "," : "") << "window_" << j;
  out << '\n';
  std::string row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < windows.size(); ++j) {
      if (j) row += ',';
      row += fmt::format("{:.17g}", windows[j].samples()[i]);
    }
    row += '\n';
    out << row;
  }
}

std::vector<spectral::SignalWindow> readWindows(std::istream& in) {
  std::optional<double> dt;
  std::optional<std::size_t> columns;
  std::vector<std::vector<double>> cols;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    if (line[0] == '#') {
      if (auto kv = commentKeyValue(line); kv && kv->first == "dt") dt = parseCell(kv->second, row, 0);
      continue;
    }
    const auto cells = splitCsv(line);
    if (!columns) {
      columns = cells.size();
      cols.assign(*columns, {});
      continue;  // header
    }
    if (cells.size() != *columns) {
      throw ValidationError(fmt::format("csv row {} has {} columns, header has {}", row, cells.size(), *columns));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) cols[j].push_back(parseCell(cells[j], row, j));
  }
  if (!dt) throw ValidationError("signal csv is missing the '# dt=' line");
  if (!columns) throw ValidationError("signal csv has no header row");
  std::vector<spectral::SignalWindow> out;
  out.reserve(cols.size());
  for (auto& c : cols) out.emplace_back(*dt, std::move(c));
  return out;
}

std::vector<spectral::SignalWindow> readWindows(const std::filesystem::path& path) {
  auto in = openForRead(path);
  return readWindows(in);
}

void writeSpectrum(std::ostream& out, const SpectrumSeries& s) {
  out << "# units=" << unitsName(s.units()) << '\n' << "f_hz,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g}\n", s.frequencies()[i], s.values()[i]);
  }
}

SpectrumSeries readSpectrum(std::istream& in) {
  SpectrumUnits units = SpectrumUnits::VoltsSquaredPerHz;
  std::vector<double> f, v;
  bool header = false;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    if (line[0] == '#') {
      if (auto kv = commentKeyValue(line); kv && kv->first == "units") units = parseSpectrumUnits(kv->second);
      continue;
    }
    const auto cells = splitCsv(line);
    if (!header) {
      header = true;
      if (cells.size() < 2) throw ValidationError("spectrum csv header needs two columns");
      continue;
    }
    if (cells.size() < 2) throw ValidationError(fmt::format("spectrum csv row {} has fewer than 2 columns", row));
    f.push_back(parseCell(cells[0], row, 0));
    v.push_back(parseCell(cells[1], row, 1));
  }
  return {std::move(f), std::move(v), units};
}

SpectrumSeries readSpectrum(const std::filesystem::path& path) {
  auto in = openForRead(path);
  return readSpectrum(in);
}

}  // namespace qnoise::io
