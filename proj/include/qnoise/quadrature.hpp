#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qnoise::quadrature {

using Integrand = std::function<std::complex<double>(double)>;

struct Panel {
  double a;
  double b;
};

struct Options {
  double rel_tol = 1e-13;
  int max_depth = 30;
};

struct Result {
  std::complex<double> value;
  double error_estimate;
  std::vector<Panel> panels;  // final accepted grid
};

/// Breakpoints a = x0 < x1 < ... < xn = b with interior points at the
/// half-period multiples k*pi/|omega| (omega taken as given; 0 gives {a, b}).
std::vector<double> halfPeriodBreaks(double a, double b, double omega);

/// Replaces the first interval [x0, x1] with geometrically graded pieces
/// [x0 + h 2^-k, x0 + h 2^-(k-1)], k = levels..1. Returns the uncovered gap
/// width h 2^-levels; the caller accounts for [x0, x0 + gap] analytically.
double gradeTowardStart(std::vector<double>& breaks, int levels);

/// Adaptive Gauss-Kronrod (7/15) over each interval between breakpoints,
/// bisecting until every panel meets rel_tol against the larger of its own
/// magnitude and its share of the total absolute mass. Throws NumericalError
/// if a panel still fails at max_depth.
Result integrate(const Integrand& f, const std::vector<double>& breaks, const Options& opts = {});

/// Kronrod-15 sum on a fixed grid: lets several integrands share one grid.
std::complex<double> integrateOnPanels(const Integrand& f, const std::vector<Panel>& panels);

/// Panels mirrored through the origin, in increasing order.
std::vector<Panel> mirrored(const std::vector<Panel>& panels);

/// Nodes per Kronrod panel.
inline constexpr int kNodesPerPanel = 15;

}  // namespace qnoise::quadrature
