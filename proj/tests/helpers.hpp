#pragma once

// Shared fixtures for the test suite.

#include <cmath>
#include <vector>

#include "axsym/estimator.hpp"
#include "axsym/geometry.hpp"
#include "axsym/rng.hpp"

namespace testutil {

inline axsym::UnitVector random_unit(axsym::Rng& rng) {
  return axsym::UnitVector::from_angle(axsym::kTwoPi * rng.uniform());
}

// One-sided crescent: angle compressed toward 0 over a 150 degree fan,
// radius near 1. No axial symmetry of its own.
inline axsym::Point crescent(axsym::Rng& rng) {
  const double u = rng.uniform();
  const double phi = (5.0 * axsym::kPi / 6.0) * (1.0 - std::pow(1.0 - u, 0.25));
  const double r = 1.0 + 0.06 * rng.normal();
  return {r * std::cos(phi), r * std::sin(phi)};
}

// Cloud that is exactly mirror-symmetric about the axis at `angle`:
// half crescent draws plus their exact reflections, already centered
// in distribution but not in sample; callers center as needed.
inline axsym::PointCloud mirrored_cloud(std::size_t half, double angle,
                                        axsym::Rng& rng) {
  const axsym::UnitVector axis = axsym::UnitVector::from_angle(angle);
  axsym::PointCloud cloud;
  cloud.points.reserve(2 * half);
  for (std::size_t i = 0; i < half; ++i) cloud.points.push_back(crescent(rng));
  for (std::size_t i = 0; i < half; ++i)
    cloud.points.push_back(axsym::apply_reflection(axis, cloud.points[i]));
  return cloud;
}

// Split whose halves are exact mirror images across `axis`: half1 is the
// base block, half2 its pointwise reflection. Bypasses the random split.
inline axsym::SplitSample mirrored_split(std::size_t half,
                                         const axsym::UnitVector& axis,
                                         axsym::Rng& rng) {
  axsym::SplitSample split;
  split.half1.points.reserve(half);
  split.half2.points.reserve(half);
  for (std::size_t i = 0; i < half; ++i)
    split.half1.points.push_back(crescent(rng));
  for (std::size_t i = 0; i < half; ++i)
    split.half2.points.push_back(
        axsym::apply_reflection(axis, split.half1.points[i]));
  // Mark centered so profile-level code leaves the construction alone.
  split.half1.centered = split.half2.centered = true;
  return split;
}

}  // namespace testutil
