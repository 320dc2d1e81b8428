#include "qnoise/geometry.hpp"

#include <cmath>
#include <fmt/format.h>
#include <vector>

#include "qnoise/error.hpp"
#include "qnoise/parallel.hpp"
#include "qnoise/random.hpp"
#include "qnoise/units.hpp"

namespace qnoise::geometry {

namespace {

void requirePositive(double v, const char* field) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ValidationError(fmt::format("{} must be finite and positive (got {})", field, v));
  }
}

void requireFinite(const Vec3& p, const char* what) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw ValidationError(fmt::format("{} has non-finite coordinates", what));
  }
}

// ln(z + r) with r = sqrt(x^2 + y^2 + z^2), free of cancellation for z < 0.
double logZPlusR(double z, double r, double rho2) {
  if (z >= 0.0) return std::log(z + r);
  return std::log(rho2) - std::log(r - z);
}

// Antiderivative of 1/r in all three coordinates. Terms whose prefactor
// vanishes are dropped (their limits are zero).
double cornerTerm(double x, double y, double z) {
  const double x2 = x * x, y2 = y * y, z2 = z * z;
  const double r = std::sqrt(x2 + y2 + z2);
  if (r == 0.0) return 0.0;
  double t = 0.0;
  if (x != 0.0 && y != 0.0) t += x * y * logZPlusR(z, r, x2 + y2);
  if (y != 0.0 && z != 0.0) t += y * z * logZPlusR(x, r, y2 + z2);
  if (z != 0.0 && x != 0.0) t += z * x * logZPlusR(y, r, z2 + x2);
  if (x != 0.0) t -= 0.5 * x2 * std::atan(y * z / (x * r));
  if (y != 0.0) t -= 0.5 * y2 * std::atan(z * x / (y * r));
  if (z != 0.0) t -= 0.5 * z2 * std::atan(x * y / (z * r));
  return t;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

constexpr std::size_t kBlock = 4096;

}  // namespace

BoxSample::BoxSample(double width_cm, double length_cm, double thickness_cm)
    : width_(width_cm), length_(length_cm), thickness_(thickness_cm) {
  requirePositive(width_, "width");
  requirePositive(length_, "length");
  requirePositive(thickness_, "thickness");
}

BoxSample BoxSample::fromMicrometers(double width_um, double length_um, double thickness_nm) {
  requirePositive(width_um, "width_um");
  requirePositive(length_um, "length_um");
  requirePositive(thickness_nm, "thickness_nm");
  return {units::micrometersToCm(width_um), units::micrometersToCm(length_um),
          units::nanometersToCm(thickness_nm)};
}

bool BoxSample::contains(const Vec3& p, double rel_tol) const {
  auto in = [rel_tol](double v, double hi) { return v >= -rel_tol * hi && v <= hi * (1.0 + rel_tol); };
  return in(p.x, length_) && in(p.y, width_) && in(p.z, thickness_);
}

ProbePair ProbePair::endEdgeMidpoints(const BoxSample& box) {
  const double yc = 0.5 * box.width();
  const double zc = 0.5 * box.thickness();
  return {Vec3{0.0, yc, zc}, Vec3{box.length(), yc, zc}, ProbePlacement::EndEdgeMidpoints};
}

ProbePair ProbePair::explicitPoints(const BoxSample& box, Vec3 x1, Vec3 x2, bool allow_coincident) {
  requireFinite(x1, "probe 1");
  requireFinite(x2, "probe 2");
  if (!box.contains(x1)) throw ValidationError("probe 1 lies outside the sample box");
  if (!box.contains(x2)) throw ValidationError("probe 2 lies outside the sample box");
  if (x1 == x2 && !allow_coincident) {
    throw ValidationError("probes coincide; pass allow_coincident for the degenerate case");
  }
  return {x1, x2, ProbePlacement::Explicit};
}

double boxPotential(const BoxSample& box, const Vec3& p) {
  requireFinite(p, "evaluation point");
  const double xs[2] = {-p.x, box.length() - p.x};
  const double ys[2] = {-p.y, box.width() - p.y};
  const double zs[2] = {-p.z, box.thickness() - p.z};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        // upper-bound corners (index 1) carry +, the triple difference sign
        const double sign = ((i + j + k) % 2 == 1) ? 1.0 : -1.0;
        sum += sign * cornerTerm(xs[i], ys[j], zs[k]);
      }
    }
  }
  return sum;
}

MonteCarloEstimate mcBoxPotential(const BoxSample& box, const Vec3& p, std::size_t n, std::uint64_t seed,
                                  unsigned workers) {
  requireFinite(p, "evaluation point");
  if (n < 1000) throw ValidationError(fmt::format("sample count must be at least 1000 (got {})", n));

  struct Moments {
    double count = 0.0, mean = 0.0, m2 = 0.0;
  };
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<Moments> partial(blocks);
  const double vol = box.volume();

  parallelFor(blocks, workers, [&](std::size_t b) {
    auto rng = substream(seed, b);
    const std::size_t m = std::min(kBlock, n - b * kBlock);
    Moments acc;
    for (std::size_t s = 0; s < m; ++s) {
      const double dx = uniform01(rng) * box.length() - p.x;
      const double dy = uniform01(rng) * box.width() - p.y;
      const double dz = uniform01(rng) * box.thickness() - p.z;
      const double v = vol / std::sqrt(dx * dx + dy * dy + dz * dz);
      acc.count += 1.0;
      const double d = v - acc.mean;
      acc.mean += d / acc.count;
      acc.m2 += d * (v - acc.mean);
    }
    partial[b] = acc;
  });

  Moments total;
  for (const auto& m : partial) {
    const double count = total.count + m.count;
    const double d = m.mean - total.mean;
    total.mean += d * m.count / count;
    total.m2 += m.m2 + d * d * total.count * m.count / count;
    total.count = count;
  }
  const double var = total.m2 / (total.count - 1.0);
  return {total.mean, std::sqrt(var / total.count), n};
}

double geometricFactor(const BoxSample& box, const ProbePair& probes) {
  const double phi1 = boxPotential(box, probes.first());
  const double phi2 = boxPotential(box, probes.second());
  return (phi1 + phi2) / (3.0 * box.volume());
}

}  // namespace qnoise::geometry
