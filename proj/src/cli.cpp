#include "qnoise/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "qnoise/error.hpp"
#include "qnoise/geometry.hpp"
#include "qnoise/noisefloor.hpp"
#include "qnoise/processlab.hpp"
#include "qnoise/quantumtoy.hpp"
#include "qnoise/signal_io.hpp"
#include "qnoise/spectral.hpp"

namespace qnoise::cli {

namespace {

using std::numbers::pi;

/// Output sink: CSV goes to --out when given, otherwise to stdout after the
/// '#'-prefixed summary lines.
struct Sink {
  std::ostream& out;
  std::string path;

  void summary(const std::string& line) const { out << "# " << line << '\n'; }

  void csv(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError(fmt::format("out: cannot write {}", path));
    f << text;
    if (!f) throw ValidationError(fmt::format("out: failed writing {}", path));
  }
};

struct FrequencyOptions {
  std::vector<double> list;
  double f_min = 0.0;
  double f_max = 0.0;
  std::size_t points = 0;
  bool log_spaced = false;

  void attach(CLI::App* app) {
    app->add_option("--freq", list, "Frequencies in Hz (comma separated)")->delimiter(',');
    app->add_option("--f-min", f_min, "Grid start, Hz");
    app->add_option("--f-max", f_max, "Grid end, Hz");
    app->add_option("--points", points, "Number of grid points");
    app->add_flag("--log", log_spaced, "Logarithmic grid spacing");
  }

  std::vector<double> grid() const {
    if (!list.empty()) {
      for (double f : list) {
        if (!std::isfinite(f)) throw ValidationError("freq: values must be finite");
      }
      return list;
    }
    if (points < 1) throw ValidationError("freq: give --freq or --f-min/--f-max/--points");
    if (!(f_max > f_min) && points > 1) throw ValidationError("f-max: must exceed f-min");
    if (log_spaced && !(f_min > 0.0)) throw ValidationError("f-min: must be positive for a log grid");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
      const double u = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
      g[i] = log_spaced ? f_min * std::pow(f_max / f_min, u) : f_min + u * (f_max - f_min);
    }
    return g;
  }
};

std::string num(double v) { return fmt::format("{:.10g}", v); }

geometry::Vec3 parsePointOption(const std::string& s, const char* field) {
  std::stringstream ss(s);
  std::string item;
  std::vector<double> c;
  while (std::getline(ss, item, ',')) {
    try {
      c.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("{}: '{}' is not a number", field, item));
    }
  }
  if (c.size() != 3) throw ValidationError(fmt::format("{}: expected x,y,z", field));
  return {c[0], c[1], c[2]};
}

// ---------------------------------------------------------------------------

struct GfactorCmd {
  std::vector<std::string> samples;
  double width_um = std::nan("");
  double length_um = std::nan("");
  double thickness_nm = std::nan("");
  std::string probe1, probe2;
  std::size_t mc = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void attach(CLI::App* app) {
    app->add_option("--sample", samples, "Sample descriptor file(s) (key=value)");
    app->add_option("--width-um", width_um, "Sample width, micrometers");
    app->add_option("--length-um", length_um, "Sample length along the current, micrometers");
    app->add_option("--thickness-nm", thickness_nm, "Sample thickness, nanometers");
    app->add_option("--probe1-um", probe1, "Probe 1 position x,y,z in micrometers (default: end-face midpoint)");
    app->add_option("--probe2-um", probe2, "Probe 2 position x,y,z in micrometers (default: end-face midpoint)");
    app->add_option("--mc", mc, "Also run the Monte Carlo oracle with this many samples per probe (0 = off)");
    app->add_option("--seed", seed, "Monte Carlo seed");
    app->add_option("--workers", workers, "Monte Carlo worker threads (0 = all cores)");
  }

  int run(const Sink& sink) const {
    std::vector<noisefloor::SampleRecord> records;
    for (const auto& s : samples) records.push_back(noisefloor::loadSampleDescriptor(s));
    if (samples.empty()) {
      noisefloor::SampleRecord r;
      r.name = "sample";
      if (std::isnan(width_um)) throw ValidationError("width_um: missing (--width-um or --sample)");
      if (std::isnan(length_um)) throw ValidationError("length_um: missing (--length-um or --sample)");
      if (std::isnan(thickness_nm)) throw ValidationError("thickness_nm: missing (--thickness-nm or --sample)");
      r.width_um = width_um;
      r.length_um = length_um;
      r.thickness_nm = thickness_nm;
      if (!probe1.empty()) r.probe1_um = parsePointOption(probe1, "probe1_um");
      if (!probe2.empty()) r.probe2_um = parsePointOption(probe2, "probe2_um");
      r.validate();
      records.push_back(r);
    }
    if (mc != 0 && mc < 1000) throw ValidationError("mc: sample count must be at least 1000");

    std::string csv = "name,width_um,length_um,thickness_nm,phi1_cm2,phi2_cm2,g_per_cm";
    if (mc) csv += ",mc_g_per_cm,mc_std_error";
    csv += '\n';
    for (const auto& r : records) {
      const auto box = r.box();
      const auto probes = r.probes();
      const double phi1 = geometry::boxPotential(box, probes.first());
      const double phi2 = geometry::boxPotential(box, probes.second());
      const double g = geometry::geometricFactor(box, probes);
      csv += fmt::format("{},{},{},{},{},{},{}", r.name, num(r.width_um), num(r.length_um), num(r.thickness_nm),
                         num(phi1), num(phi2), num(g));
      std::string mc_note;
      if (mc) {
        const auto m1 = geometry::mcBoxPotential(box, probes.first(), mc, seed, workers);
        const auto m2 = geometry::mcBoxPotential(box, probes.second(), mc, seed + 1, workers);
        const double scale = 1.0 / (3.0 * box.volume());
        const double g_mc = (m1.estimate + m2.estimate) * scale;
        const double se = std::hypot(m1.std_error, m2.std_error) * scale;
        csv += fmt::format(",{},{}", num(g_mc), num(se));
        mc_note = fmt::format(" (Monte Carlo {:.6g} +- {:.2g})", g_mc, se);
      }
      csv += '\n';
      sink.summary(fmt::format("{}: g = {:.6g} 1/cm{}", r.name, g, mc_note));
    }
    sink.csv(csv);
    return kExitOk;
  }
};

struct KappaCmd {
  double g = std::nan("");
  std::string sample;
  std::vector<double> masses;
  double u0 = std::nan("");
  std::string spectrum_out;
  FrequencyOptions freq;

  void attach(CLI::App* app) {
    app->add_option("--g", g, "Geometrical factor, 1/cm");
    app->add_option("--sample", sample, "Sample descriptor; g computed with its probes and masses");
    app->add_option("--mass", masses, "Carrier mass ratios m/m0 (comma separated; default 0.06,0.09)")
        ->delimiter(',');
    app->add_option("--u0", u0, "Bias voltage U0, volts (for the S_F spectrum)");
    app->add_option("--spectrum-out", spectrum_out, "Write S_F(f) = kappa U0^2/|f| (V^2/Hz) to this CSV");
    freq.attach(app);
  }

  int run(const Sink& sink) const {
    double gv = g;
    std::vector<units::CarrierSpecies> species;
    if (!sample.empty()) {
      const auto r = noisefloor::loadSampleDescriptor(sample);
      gv = geometry::geometricFactor(r.box(), r.probes());
      species = r.species();
    }
    if (std::isnan(gv)) throw ValidationError("g: missing (--g or --sample)");
    if (!masses.empty()) {
      species.clear();
      for (std::size_t i = 0; i < masses.size(); ++i) {
        const char* label = masses.size() == 2 ? (i == 0 ? "electron" : "hole") : "";
        species.emplace_back(*label ? std::string(label) : fmt::format("species_{}", i), masses[i]);
      }
    }
    if (species.empty()) species = {units::CarrierSpecies("electron", 0.06), units::CarrierSpecies("hole", 0.09)};

    const auto res = noisefloor::noiseFloor(gv, species);
    std::string csv = "species,mass_ratio,g_per_cm,kappa\n";
    for (std::size_t i = 0; i < species.size(); ++i) {
      csv += fmt::format("{},{},{},{}\n", species[i].label(), num(species[i].massRatio()), num(gv),
                         num(res.per_species[i].second));
    }
    csv += fmt::format("total,,{},{}\n", num(gv), num(res.kappa));
    sink.summary(fmt::format("g = {:.6g} 1/cm, kappa = {:.4g}, kappa/g = {:.4g} cm", gv, res.kappa, res.kappa / gv));

    if (!spectrum_out.empty()) {
      if (std::isnan(u0)) throw ValidationError("u0: required with --spectrum-out");
      const auto s = noisefloor::fundamentalSpectrum(res.kappa, u0, freq.grid());
      std::ofstream f(spectrum_out, std::ios::binary);
      if (!f) throw ValidationError(fmt::format("spectrum-out: cannot write {}", spectrum_out));
      io::writeSpectrum(f, s);
      sink.summary(fmt::format("S_F written to {} ({} points)", spectrum_out, s.size()));
    }
    sink.csv(csv);
    return kExitOk;
  }
};

struct Table1Cmd {
  std::string dir = QNOISE_DATA_DIR "/samples";
  std::vector<std::string> files;

  void attach(CLI::App* app) {
    app->add_option("--samples-dir", dir, "Directory of *.txt sample descriptors (default: bundled table)");
    app->add_option("files", files, "Explicit descriptor files (override --samples-dir)");
  }

  int run(const Sink& sink) const {
    std::vector<noisefloor::SampleRecord> records;
    if (files.empty()) {
      records = noisefloor::loadSampleDirectory(dir);
    } else {
      for (const auto& f : files) records.push_back(noisefloor::loadSampleDescriptor(f));
    }
    const auto rows = noisefloor::tableOneReport(records);
    for (const auto& r : rows) {
      sink.summary(fmt::format("{:<6} g={:<9.4g} kappa={:<9.3g} published={:<9s} {}", r.name, r.g_calc, r.kappa_calc,
                               r.kappa_paper ? fmt::format("{:.3g}", *r.kappa_paper) : "-",
                               r.flagged ? "FLAG (>10% off the published value)" : "ok"));
    }
    sink.csv(noisefloor::reportCsv(rows));
    return kExitOk;
  }
};

struct SigmaCmd {
  std::string model;
  double tm = std::nan("");
  double omega_tm = std::nan("");
  FrequencyOptions freq;

  void attach(CLI::App* app) {
    app->add_option("--model", model,
                    "Covariance: ou:variance=<V^2>,tau=<s> | log:a=<1>,tau0=<s> | zero, '+' for sums")
        ->required();
    app->add_option("--tm", tm, "Measurement window t_m, seconds");
    app->add_option("--omega-tm", omega_tm, "Instead of --tm: fix the product omega*t_m (dimensionless)");
    freq.attach(app);
  }

  int run(const Sink& sink) const {
    const auto m = spectral::parseCovarianceModel(model);
    if (std::isnan(tm) == std::isnan(omega_tm)) throw ValidationError("tm: give exactly one of --tm or --omega-tm");
    std::string csv = "f_hz,omega,tm_s,sigma,sigma_times_abs_f,two_term,imag\n";
    for (double f : freq.grid()) {
      if (f == 0.0) throw ValidationError("freq: sigma is undefined at f = 0");
      const double omega = 2.0 * pi * f;
      const double t = std::isnan(tm) ? omega_tm / std::abs(omega) : tm;
      const auto s = spectral::sigmaOfF(m, omega, t);
      csv += fmt::format("{},{},{},{},{},{},{}\n", num(f), num(omega), num(t), num(s.value),
                         num(s.value * std::abs(f)), num(s.two_term), num(s.imag));
      sink.summary(fmt::format("f={:.4g} Hz: Sigma={:.6g}, Sigma*|f|={:.6g}", f, s.value, s.value * std::abs(f)));
    }
    sink.csv(csv);
    return kExitOk;
  }
};

struct KernelsCmd {
  double omega = std::nan("");
  double freq = std::nan("");
  double tm = 0.0;
  double tau = 1.0;
  double cutoff = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--omega", omega, "Angular frequency, rad/s");
    app->add_option("--freq", freq, "Instead of --omega: frequency in Hz (omega = 2 pi f)");
    app->add_option("--tm", tm, "Window half-width t_m, seconds")->required();
    app->add_option("--sinc-tau", tau, "Lag tau for the sine-integral check, seconds");
    app->add_option("--sinc-cutoff", cutoff, "Truncation K of the sine integral, rad/s (0 = 1000/|tau|)");
  }

  int run(const Sink& sink) const {
    if (std::isnan(omega) == std::isnan(freq)) throw ValidationError("omega: give exactly one of --omega or --freq");
    const double w = std::isnan(omega) ? 2.0 * pi * freq : omega;
    const auto r = spectral::kernelAsymptotics(w, tm, tau, cutoff);
    std::string csv =
        "omega,tm,log_first,log_second,log_difference,log_limit,log_relative_residual,log_envelope,"
        "sign_numeric,sign_exact,sign_relative_residual,linear_numeric,linear_leading,"
        "sinc_tau,sinc_cutoff,sinc_truncated,sinc_tail,sinc_corrected,sinc_target,sinc_residual\n";
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(r.omega), num(r.tm),
                       num(r.log_first), num(r.log_second), num(r.log_difference), num(r.log_limit),
                       num(r.log_relative_residual), num(r.log_envelope), num(r.sign_numeric), num(r.sign_exact),
                       num(r.sign_relative_residual), num(r.linear_numeric), num(r.linear_leading), num(r.sinc_tau),
                       num(r.sinc_cutoff), num(r.sinc_truncated), num(r.sinc_tail), num(r.sinc_corrected),
                       num(r.sinc_target), num(r.sinc_residual));
    sink.summary(fmt::format("A-B = {:.8g} vs -pi/|omega| = {:.8g} (relative residual {:.2e})", r.log_difference,
                             r.log_limit, r.log_relative_residual));
    sink.summary(fmt::format("sign kernel residual {:.2e}, sinc residual {:.2e}", r.sign_relative_residual,
                             r.sinc_residual));
    sink.csv(csv);
    return kExitOk;
  }
};

struct ToyCmd {
  quantumtoy::SweepConfig cfg;
  long max_dim = 6;
  std::string ladder_out;
  double nu = 1.0;
  double ladder_omega = 1.0;
  double ladder_dt = 0.05;
  std::size_t ladder_n0 = 17;
  int ladder_levels = 8;

  void attach(CLI::App* app) {
    app->add_option("--systems", cfg.systems, "Number of random systems");
    app->add_option("--seed", cfg.seed, "Master seed");
    app->add_option("--max-dim", max_dim, "Largest Hilbert-space dimension (>= 2)");
    app->add_option("--max-nodes", cfg.max_nodes, "Largest number of time nodes");
    app->add_option("--omega", cfg.omegas, "Angular frequencies, rad/s (each also at -omega; comma separated)")
        ->delimiter(',');
    app->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
    app->add_option("--ladder-out", ladder_out, "Also write a doubling-t_m ladder for the rotating two-level family");
    app->add_option("--ladder-nu", nu, "Rotation rate of the two-level family, rad/s");
    app->add_option("--ladder-omega", ladder_omega, "Angular frequency for the ladder, rad/s");
    app->add_option("--ladder-dt", ladder_dt, "Node spacing for the ladder, seconds");
  }

  int run(const Sink& sink) {
    cfg.max_dim = max_dim;
    const auto rows = quantumtoy::verifyRandomSystems(cfg);
    std::string csv =
        "system,dim,nodes,rank,min_slack,median_slack,min_product_slack,median_product_slack,"
        "max_identity_relative,max_odd_residual,max_real_part\n";
    double worst_slack = INFINITY, worst_product = INFINITY, worst_identity = 0.0, worst_odd = 0.0;
    for (const auto& s : rows) {
      csv += fmt::format("{},{},{},{},{:.6e},{:.6e},{:.6e},{:.6e},{:.3e},{:.3e},{:.3e}\n", s.index, s.dim, s.nodes,
                         s.rank, s.min_slack, s.median_slack, s.min_product_slack, s.median_product_slack,
                         s.max_identity_relative, s.max_odd_residual, s.max_real_part);
      worst_slack = std::min(worst_slack, s.min_slack);
      worst_product = std::min(worst_product, s.min_product_slack);
      worst_identity = std::max(worst_identity, s.max_identity_relative);
      worst_odd = std::max(worst_odd, s.max_odd_residual);
    }
    sink.summary(fmt::format("{} systems: min sum slack {:.3e}, min product slack {:.3e}", rows.size(), worst_slack,
                             worst_product));
    sink.summary(fmt::format("max commutator identity residual {:.3e}, max odd-parity residual {:.3e}",
                             worst_identity, worst_odd));
    if (!ladder_out.empty()) {
      quantumtoy::Matrix rho = quantumtoy::Matrix::Zero(2, 2);
      rho(0, 0) = 1.0;
      const auto ladder = quantumtoy::doublingLadder(
          rho, 0.0, ladder_dt, ladder_n0, ladder_levels, ladder_omega,
          [this](double t) { return quantumtoy::rotatingSpin(nu, t); });
      std::ofstream f(ladder_out, std::ios::binary);
      if (!f) throw ValidationError(fmt::format("ladder-out: cannot write {}", ladder_out));
      f << "nodes,tm_s,s_est,s_f_est\n";
      for (const auto& r : ladder) f << fmt::format("{},{},{},{}\n", r.nodes, num(r.tm), num(r.s_est), num(r.s_f_est));
    }
    sink.csv(csv);
    return worst_slack >= -1e-10 && worst_product >= -1e-10 && worst_identity <= 1e-10 ? kExitOk : kExitNumerical;
  }
};

struct SynthCmd {
  std::string model;
  double gamma = std::nan("");
  double f_low = 0.0, f_high = 0.0, level = 1.0;
  std::size_t n = 1024;
  double dt = 1.0;
  std::size_t windows = 1;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "Covariance model (ou:variance=<V^2>,tau=<s>, '+' sums); log is rejected");
    app->add_option("--gamma", gamma, "Instead of --model: power-law exponent in [0, 2]");
    app->add_option("--f-low", f_low, "Power-law low cutoff, Hz (spectrum flat below)");
    app->add_option("--f-high", f_high, "Power-law high cutoff, Hz (<= 1/(2 dt))");
    app->add_option("--level", level, "Power-law level, V^2/Hz at 1 Hz");
    app->add_option("--n", n, "Samples per window (power of two >= 64)");
    app->add_option("--dt", dt, "Sample spacing, seconds");
    app->add_option("--windows", windows, "Number of windows");
    app->add_option("--seed", seed, "Seed");
    app->add_option("--workers", workers, "Worker threads (0 = all cores)");
  }

  int run(const Sink& sink) const {
    processlab::SynthesisSpec spec{spectral::CovarianceModel::zero(), n, dt, seed};
    if (model.empty() == std::isnan(gamma)) throw ValidationError("model: give exactly one of --model or --gamma");
    if (!model.empty()) {
      spec.source = spectral::parseCovarianceModel(model);
    } else {
      spec.source = processlab::PowerLaw{gamma, f_low, f_high, level};
    }
    if (windows < 1) throw ValidationError("windows: must be at least 1");
    const processlab::Synthesizer synth(spec);
    const auto ens = synth.ensemble(windows, workers);
    std::ostringstream csv;
    io::writeWindows(csv, ens);
    sink.summary(fmt::format("{} windows of {} samples, dt = {} s; embedding size {}, clipped fraction {:.3g}",
                             windows, n, dt, synth.diagnostics().size, synth.diagnostics().clipped_fraction));
    sink.csv(csv.str());
    return kExitOk;
  }
};

struct SpectrumCmd {
  std::string in;
  unsigned workers = 1;
  FrequencyOptions freq;

  void attach(CLI::App* app) {
    app->add_option("--in", in, "Signal CSV (# dt= line, one column per window, volts)")->required();
    app->add_option("--workers", workers, "Worker threads (0 = all cores)");
    freq.attach(app);
  }

  int run(const Sink& sink) const {
    const auto windows = io::readWindows(std::filesystem::path(in));
    const auto s = spectral::powerSpectrum(windows, freq.grid(), workers);
    std::ostringstream csv;
    io::writeSpectrum(csv, s);
    sink.summary(fmt::format("{} windows, t_m = {} s, {} frequencies (V^2/Hz, two-sided)", windows.size(),
                             windows.front().tm(), s.size()));
    sink.csv(csv.str());
    return kExitOk;
  }
};

struct SlopeCmd {
  std::string in;
  double f_lo = 0.0, f_hi = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--in", in, "Spectrum CSV (f_hz,value)")->required();
    app->add_option("--f-lo", f_lo, "Fit range start, Hz")->required();
    app->add_option("--f-hi", f_hi, "Fit range end, Hz")->required();
  }

  int run(const Sink& sink) const {
    const auto s = io::readSpectrum(std::filesystem::path(in));
    const double g = processlab::slopeFit(s, f_lo, f_hi);
    std::size_t used = 0;
    for (double f : s.frequencies()) used += (f >= f_lo && f <= f_hi);
    sink.summary(fmt::format("gamma_hat = {:.6g} over [{}, {}] Hz ({} points)", g, f_lo, f_hi, used));
    sink.csv(fmt::format("f_lo_hz,f_hi_hz,points,gamma_hat\n{},{},{},{}\n", num(f_lo), num(f_hi), used, num(g)));
    return kExitOk;
  }
};

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qnoise: quantum-indeterminacy bound on 1/f voltage noise, and numerical checks"};
  app.require_subcommand(1);
  std::string out_path;

  GfactorCmd gfactor;
  KappaCmd kappa;
  Table1Cmd table1;
  SigmaCmd sigma;
  KernelsCmd kernels;
  ToyCmd toy;
  SynthCmd synth;
  SpectrumCmd spectrum;
  SlopeCmd slope;

  auto* c_g = app.add_subcommand("gfactor", "Geometrical factor g (1/cm) of a box sample");
  gfactor.attach(c_g);
  auto* c_k = app.add_subcommand("kappa", "Dimensionless noise coefficient kappa; optional S_F(f) spectrum");
  kappa.attach(c_k);
  auto* c_t = app.add_subcommand("table1", "Compare computed g and kappa against the published sample table");
  table1.attach(c_t);
  auto* c_s = app.add_subcommand("sigma", "Finite-window spectral functional Sigma(f) of a covariance model");
  sigma.attach(c_s);
  auto* c_ke = app.add_subcommand("kernels", "Numerical check of the ln|tau|, sign and sine-integral kernels");
  kernels.attach(c_ke);
  auto* c_q = app.add_subcommand("toy-verify", "Uncertainty bound and commutator identity on random toy systems");
  toy.attach(c_q);
  auto* c_y = app.add_subcommand("synthesize", "Synthesize stationary Gaussian signal windows (CSV)");
  synth.attach(c_y);
  auto* c_p = app.add_subcommand("spectrum", "Ensemble power spectral density estimate (V^2/Hz) of signal windows");
  spectrum.attach(c_p);
  auto* c_l = app.add_subcommand("slope", "Fit the frequency exponent gamma of a spectrum");
  slope.attach(c_l);

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--out", out_path, "Write the CSV here instead of standard output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  const Sink sink{out, out_path};
  try {
    if (c_g->parsed()) return gfactor.run(sink);
    if (c_k->parsed()) return kappa.run(sink);
    if (c_t->parsed()) return table1.run(sink);
    if (c_s->parsed()) return sigma.run(sink);
    if (c_ke->parsed()) return kernels.run(sink);
    if (c_q->parsed()) return toy.run(sink);
    if (c_y->parsed()) return synth.run(sink);
    if (c_p->parsed()) return spectrum.run(sink);
    if (c_l->parsed()) return slope.run(sink);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace qnoise::cli
