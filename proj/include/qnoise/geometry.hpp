#pragma once

#include <cstddef>
#include <cstdint>

namespace qnoise::geometry {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Rectangular sample occupying [0, length] x [0, width] x [0, thickness], in cm.
/// The current (and the usual probe alignment) runs along x.
class BoxSample {
 public:
  /// Throws ValidationError naming the offending dimension.
  BoxSample(double width_cm, double length_cm, double thickness_cm);

  /// Convenience for the lab units used in sample descriptors.
  static BoxSample fromMicrometers(double width_um, double length_um, double thickness_nm);

  double width() const { return width_; }
  double length() const { return length_; }
  double thickness() const { return thickness_; }
  double volume() const { return width_ * length_ * thickness_; }

  bool contains(const Vec3& p, double rel_tol = 1e-12) const;
  BoxSample scaled(double s) const { return {s * width_, s * length_, s * thickness_}; }

 private:
  double width_, length_, thickness_;
};

enum class ProbePlacement { EndEdgeMidpoints, Explicit };

/// Pointlike voltage probes. Both points must lie within the closed box.
class ProbePair {
 public:
  /// Midpoints of the end faces x = 0 and x = length.
  static ProbePair endEdgeMidpoints(const BoxSample& box);
  /// Coincident points are rejected unless `allow_coincident` is set.
  static ProbePair explicitPoints(const BoxSample& box, Vec3 x1, Vec3 x2, bool allow_coincident = false);

  const Vec3& first() const { return x1_; }
  const Vec3& second() const { return x2_; }
  ProbePlacement placement() const { return placement_; }
  ProbePair swapped() const { return {x2_, x1_, placement_}; }

 private:
  ProbePair(Vec3 a, Vec3 b, ProbePlacement p) : x1_(a), x2_(b), placement_(p) {}
  Vec3 x1_, x2_;
  ProbePlacement placement_;
};

/// Newtonian potential of the uniform box at p: the integral of 1/|r - p| over
/// the box volume, in cm^2. Closed-form corner sum; p may be inside, on the
/// surface or outside.
double boxPotential(const BoxSample& box, const Vec3& p);

struct MonteCarloEstimate {
  double estimate;
  double std_error;
  std::size_t samples;
};

/// Uniform-sampling oracle for boxPotential. Samples are drawn in fixed-size
/// blocks, each from its own counter-keyed substream; the result is the same
/// for any `workers` value (0 = hardware concurrency).
MonteCarloEstimate mcBoxPotential(const BoxSample& box, const Vec3& p, std::size_t n, std::uint64_t seed,
                                  unsigned workers = 1);

/// g = (phi(x1) + phi(x2)) / (3 volume), in 1/cm.
double geometricFactor(const BoxSample& box, const ProbePair& probes);

}  // namespace qnoise::geometry
