#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "axsym/error.hpp"
#include "axsym/rng.hpp"

namespace axsym {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

using Point = std::array<double, 2>;

//============================================================================
// Directions and axes
//============================================================================

// Direction on the unit circle. Construction validates the norm to 1e-9 and
// then renormalizes, except when x*x + y*y is exactly 1.0: that case is kept
// bit for bit so axis-aligned directions stay exact.
struct UnitVector {
  double x;
  double y;

  UnitVector(double px, double py) : x(px), y(py) {
    const double n2 = x * x + y * y;
    const double norm = std::sqrt(n2);
    if (!(std::abs(norm - 1.0) <= 1e-9))
      throw validation_error("unit vector norm outside 1e-9 tolerance");
    if (n2 != 1.0) {
      const double inv = 1.0 / norm;
      x *= inv;
      y *= inv;
    }
  }

  static UnitVector from_angle(double theta) {
    return UnitVector(std::cos(theta), std::sin(theta));
  }

  // Angle in (-pi, pi].
  double angle() const { return std::atan2(y, x); }
};

// Undirected axis: an angle in [0, pi). u and -u name the same axis.
struct AxisAngle {
  double theta;

  explicit AxisAngle(double t) : theta(normalize(t)) {}

  static double normalize(double t) {
    t = std::fmod(t, kPi);
    if (t < 0.0) t += kPi;
    if (t >= kPi) t = 0.0;  // fmod can land exactly on pi after the shift
    return t;
  }

  double degrees() const { return theta * 180.0 / kPi; }
};

// Distance between axes under the pi-periodic metric, in [0, pi/2].
inline double axial_distance(const AxisAngle& a, const AxisAngle& b) {
  const double d = std::abs(a.theta - b.theta);
  return std::min(d, kPi - d);
}

//============================================================================
// Reflections
//============================================================================

// R_u = 2 u u^T - I. Symmetric, orthogonal, involutive, det = -1.
struct ReflectionMatrix {
  double m00, m01, m10, m11;

  Point apply(const Point& p) const {
    return {m00 * p[0] + m01 * p[1], m10 * p[0] + m11 * p[1]};
  }
};

inline ReflectionMatrix reflection_matrix(const UnitVector& u) {
  const double a = 2.0 * u.x * u.x - 1.0;
  const double b = 2.0 * u.x * u.y;
  const double d = 2.0 * u.y * u.y - 1.0;
  return {a, b, b, d};
}

inline Point apply_reflection(const UnitVector& u, const Point& p) {
  return reflection_matrix(u).apply(p);
}

// Axis direction of R_{u1} R_{u2} R_{u1}, which is again a reflection:
// its axis is the mirror image of u2 across the u1 axis.
inline UnitVector compose_axis(const UnitVector& u1, const UnitVector& u2) {
  const Point v = apply_reflection(u1, {u2.x, u2.y});
  return UnitVector(v[0], v[1]);
}

//============================================================================
// Direction sets
//============================================================================

struct DirectionSet {
  std::vector<UnitVector> directions;
  std::uint64_t seed = 0;  // seed of the Rng the set was drawn from, 0 if fixed
};

// m equally spaced directions at angles 2*pi*j/m, j = 0..m-1.
inline std::vector<UnitVector> direction_grid(std::size_t m) {
  require(m >= 2, "direction grid needs at least 2 points");
  std::vector<UnitVector> grid;
  grid.reserve(m);
  for (std::size_t j = 0; j < m; ++j)
    grid.push_back(UnitVector::from_angle(kTwoPi * static_cast<double>(j) /
                                          static_cast<double>(m)));
  return grid;
}

// k i.i.d. directions, angle = 2*pi*U. One uniform draw per direction.
inline DirectionSet sample_uniform_directions(std::size_t k, Rng& rng) {
  require(k >= 1, "need at least one direction");
  DirectionSet out;
  out.seed = rng.initial_seed();
  out.directions.reserve(k);
  for (std::size_t j = 0; j < k; ++j)
    out.directions.push_back(UnitVector::from_angle(kTwoPi * rng.uniform()));
  return out;
}

}  // namespace axsym
