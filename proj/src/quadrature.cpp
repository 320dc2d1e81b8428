#include "qnoise/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "qnoise/error.hpp"

namespace qnoise::quadrature {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
  std::complex<double> kronrod;
  double error;
  double abs_mass;
  double argument_noise;  // rounding of x itself, propagated through the local slope
};

PanelEval evalPanel(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> k = fc * kWgk[7];
  std::complex<double> g = fc * kWg[3];
  double mass = std::abs(fc) * kWgk[7];
  double slope = 0.0;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::complex<double> f1 = f(c - dx);
    const std::complex<double> f2 = f(c + dx);
    if (j == 0) slope = std::abs(f2 - f1) / (2.0 * std::abs(dx));
    k += (f1 + f2) * kWgk[j];
    mass += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) g += (f1 + f2) * kWg[j / 2];
  }
  const double noise = std::numeric_limits<double>::epsilon() * (std::abs(c) + std::abs(h)) * slope * 2.0 * std::abs(h);
  return {k * h, std::abs((k - g) * h), mass * std::abs(h), noise};
}

// Neumaier summation for the real and imaginary parts separately.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    addPart(re_, cre_, v.real());
    addPart(im_, cim_, v.imag());
  }
  std::complex<double> value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void addPart(double& s, double& c, double v) {
    const double t = s + v;
    c += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

}  // namespace

std::vector<double> halfPeriodBreaks(double a, double b, double omega) {
  if (!(b > a)) throw ValidationError(fmt::format("empty integration interval [{}, {}]", a, b));
  std::vector<double> out{a};
  if (omega != 0.0 && std::isfinite(omega)) {
    const double h = std::numbers::pi / std::abs(omega);
    const double first = std::floor(a / h) + 1.0;
    const double last = std::ceil(b / h) - 1.0;
    for (double k = first; k <= last; k += 1.0) {
      const double x = k * h;
      if (x > out.back() && x < b) out.push_back(x);
    }
  }
  out.push_back(b);
  return out;
}

double gradeTowardStart(std::vector<double>& breaks, int levels) {
  if (breaks.size() < 2 || levels <= 0) return 0.0;
  const double x0 = breaks[0];
  const double h = breaks[1] - x0;
  std::vector<double> graded;
  graded.reserve(breaks.size() + levels);
  for (int k = levels; k >= 1; --k) graded.push_back(x0 + std::ldexp(h, -k));
  graded.insert(graded.end(), breaks.begin() + 1, breaks.end());
  breaks = std::move(graded);
  return std::ldexp(h, -levels);
}

Result integrate(const Integrand& f, const std::vector<double>& breaks, const Options& opts) {
  if (breaks.size() < 2) throw ValidationError("integration needs at least two breakpoints");
  struct Pending {
    Panel panel;
    PanelEval eval;
    int depth;
  };
  std::vector<Pending> base;
  base.reserve(breaks.size() - 1);
  double total_mass = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto e = evalPanel(f, breaks[i], breaks[i + 1]);
    total_mass += e.abs_mass;
    base.push_back({{breaks[i], breaks[i + 1]}, e, 0});
  }
  const double span = breaks.back() - breaks.front();

  Result out{{0.0, 0.0}, 0.0, {}};
  out.panels.reserve(base.size());
  CompensatedSum sum;
  std::vector<Pending> stack;
  for (auto& p : base) {
    stack.push_back(p);
    while (!stack.empty()) {
      Pending cur = stack.back();
      stack.pop_back();
      const double width = cur.panel.b - cur.panel.a;
      const double scale = std::max(std::abs(cur.eval.kronrod), total_mass * width / span);
      const double rounding_floor =
          64.0 * (std::numeric_limits<double>::epsilon() * cur.eval.abs_mass + cur.eval.argument_noise);
      if (cur.eval.error <= std::max(opts.rel_tol * scale, rounding_floor)) {
        sum.add(cur.eval.kronrod);
        out.error_estimate += cur.eval.error;
        out.panels.push_back(cur.panel);
        continue;
      }
      if (cur.depth >= opts.max_depth) {
        throw NumericalError(fmt::format(
            "quadrature did not converge on [{:.6g}, {:.6g}] (error {:.3g}, target {:.3g})", cur.panel.a,
            cur.panel.b, cur.eval.error, opts.rel_tol * scale));
      }
      const double mid = 0.5 * (cur.panel.a + cur.panel.b);
      // right half pushed first so panels come out in increasing order
      stack.push_back({{mid, cur.panel.b}, evalPanel(f, mid, cur.panel.b), cur.depth + 1});
      stack.push_back({{cur.panel.a, mid}, evalPanel(f, cur.panel.a, mid), cur.depth + 1});
    }
  }
  out.value = sum.value();
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    throw NumericalError("quadrature produced a non-finite value");
  }
  return out;
}

std::complex<double> integrateOnPanels(const Integrand& f, const std::vector<Panel>& panels) {
  CompensatedSum sum;
  for (const auto& p : panels) sum.add(evalPanel(f, p.a, p.b).kronrod);
  return sum.value();
}

std::vector<Panel> mirrored(const std::vector<Panel>& panels) {
  std::vector<Panel> out;
  out.reserve(panels.size());
  for (auto it = panels.rbegin(); it != panels.rend(); ++it) out.push_back({-it->b, -it->a});
  return out;
}

}  // namespace qnoise::quadrature
