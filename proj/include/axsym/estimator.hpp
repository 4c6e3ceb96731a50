#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "axsym/empirical.hpp"
#include "axsym/error.hpp"
#include "axsym/geometry.hpp"
#include "axsym/parallel.hpp"
#include "axsym/rng.hpp"

namespace axsym {

//============================================================================
// Point clouds
//============================================================================

struct PointCloud {
  std::vector<Point> points;
  bool centered = false;
  Point original_mean{0.0, 0.0};

  std::size_t size() const { return points.size(); }
};

// Subtracts the sample mean. Idempotent: a centered cloud passes through
// unchanged, so center(center(P)) == center(P) exactly.
inline PointCloud center(const PointCloud& cloud) {
  require(!cloud.points.empty(), "cannot center an empty cloud");
  if (cloud.centered) return cloud;
  double sx = 0.0, sy = 0.0;
  for (const Point& p : cloud.points) {
    sx += p[0];
    sy += p[1];
  }
  const double n = static_cast<double>(cloud.points.size());
  const Point mean{sx / n, sy / n};
  PointCloud out;
  out.points.reserve(cloud.points.size());
  for (const Point& p : cloud.points)
    out.points.push_back({p[0] - mean[0], p[1] - mean[1]});
  out.centered = true;
  out.original_mean = mean;
  return out;
}

//============================================================================
// Sample splitting
//============================================================================

struct SplitSample {
  PointCloud half1;  // floor(n/2) points
  PointCloud half2;  // the rest
};

// Random balanced split via a Fisher-Yates shuffle of the index vector.
inline SplitSample split_sample(const PointCloud& cloud, Rng& rng) {
  const std::size_t n = cloud.points.size();
  require(n >= 4, "split needs at least 4 points");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded(i + 1));
    std::swap(idx[i], idx[j]);
  }
  const std::size_t m = n / 2;
  SplitSample out;
  out.half1.centered = out.half2.centered = cloud.centered;
  out.half1.original_mean = out.half2.original_mean = cloud.original_mean;
  out.half1.points.reserve(m);
  out.half2.points.reserve(n - m);
  for (std::size_t i = 0; i < m; ++i) out.half1.points.push_back(cloud.points[idx[i]]);
  for (std::size_t i = m; i < n; ++i) out.half2.points.push_back(cloud.points[idx[i]]);
  return out;
}

//============================================================================
// Symmetry discrepancy
//============================================================================

// Mean KS distance over the direction set between projections of half1 and
// projections of the reflected half2. Reflecting the direction instead of
// the points uses <R_u x, h> = <x, R_u h>; R_u is symmetric, so both sides
// compute products of the same factor pairs and the identity also holds in
// floating point up to sign handling, which IEEE multiplication makes exact.
inline double g_hat_at(const UnitVector& u, const SplitSample& split,
                       const std::vector<UnitVector>& directions) {
  require(!directions.empty(), "empty direction set");
  require(!split.half1.points.empty() && !split.half2.points.empty(),
          "empty split half");
  const ReflectionMatrix r = reflection_matrix(u);
  double sum = 0.0;
  for (const UnitVector& h : directions) {
    const Point g = r.apply({h.x, h.y});
    const std::vector<double> a = project(split.half1.points, h);
    const std::vector<double> b = detail::project_raw(split.half2.points, g);
    sum += ks_two_sample(a, b);
  }
  return sum / static_cast<double>(directions.size());
}

// Threshold sequence for the level-set estimator.
inline double epsilon_n(std::size_t n) {
  require(n >= 2, "epsilon_n needs n >= 2");
  const double dn = static_cast<double>(n);
  return std::log(dn) / std::sqrt(dn);
}

//============================================================================
// Profiles
//============================================================================

struct SymmetryProfile {
  std::vector<double> grid_angles;  // radians, 2*pi*j/m over the full circle
  std::vector<double> values;       // g_hat at each grid direction
  std::size_t n = 0;                // cloud size the profile was built from
  std::size_t k = 0;                // number of projection directions
  double epsilon = 0.0;             // epsilon_n(n)
  std::uint64_t seed = 0;           // seed of the Rng handed to profile()

  std::size_t grid_size() const { return grid_angles.size(); }
};

namespace detail {

// Shared core. Consumption order is fixed: the split draws first, then, when
// no fixed direction set is supplied, k direction angles. g_hat(-u) == g_hat(u)
// because R_{-u} = R_u, so for even grids only the first half is evaluated
// and the second half is a bitwise copy.
inline SymmetryProfile profile_impl(const PointCloud& cloud,
                                    std::size_t grid_size,
                                    const DirectionSet* fixed_directions,
                                    std::size_t k_to_sample, Rng& rng,
                                    int threads) {
  require(cloud.points.size() >= 4, "profile needs at least 4 points");
  require(grid_size >= 2, "profile needs a grid of at least 2 directions");

  const PointCloud c = center(cloud);
  const SplitSample split = split_sample(c, rng);
  DirectionSet sampled;
  if (!fixed_directions) sampled = sample_uniform_directions(k_to_sample, rng);
  const DirectionSet& directions = fixed_directions ? *fixed_directions : sampled;
  require(!directions.directions.empty(), "profile needs directions");

  const std::vector<UnitVector> grid = direction_grid(grid_size);
  const std::size_t k = directions.directions.size();

  // Projections of half1 do not depend on the grid direction: cache them.
  std::vector<std::vector<double>> p1;
  p1.reserve(k);
  for (const UnitVector& h : directions.directions)
    p1.push_back(project(split.half1.points, h));

  SymmetryProfile prof;
  prof.grid_angles.reserve(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j)
    prof.grid_angles.push_back(kTwoPi * static_cast<double>(j) /
                               static_cast<double>(grid_size));
  prof.values.assign(grid_size, 0.0);
  prof.n = c.size();
  prof.k = k;
  prof.epsilon = epsilon_n(c.size());
  prof.seed = rng.initial_seed();

  const std::size_t evals = (grid_size % 2 == 0) ? grid_size / 2 : grid_size;
  parallel_for(evals, threads, [&](std::size_t t) {
    const ReflectionMatrix r = reflection_matrix(grid[t]);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const UnitVector& h = directions.directions[j];
      const Point g = r.apply({h.x, h.y});
      const std::vector<double> b = detail::project_raw(split.half2.points, g);
      sum += ks_two_sample(p1[j], b);
    }
    prof.values[t] = sum / static_cast<double>(k);
  });
  if (grid_size % 2 == 0)
    for (std::size_t t = 0; t < grid_size / 2; ++t)
      prof.values[t + grid_size / 2] = prof.values[t];
  return prof;
}

}  // namespace detail

// Full pipeline: center, split, draw k directions, evaluate the grid.
// rng is taken by value; the profile records its initial seed, so the same
// (cloud, grid_size, k, seed) is reproducible bit for bit at any thread count.
inline SymmetryProfile profile(const PointCloud& cloud, std::size_t grid_size,
                               std::size_t k, Rng rng, int threads = 1) {
  require(k >= 1, "profile needs k >= 1");
  return detail::profile_impl(cloud, grid_size, nullptr, k, rng, threads);
}

// Same pipeline with a caller-supplied direction set (held fixed across
// clouds). rng still drives the split.
inline SymmetryProfile profile(const PointCloud& cloud, std::size_t grid_size,
                               const DirectionSet& directions, Rng rng,
                               int threads = 1) {
  return detail::profile_impl(cloud, grid_size, &directions, 0, rng, threads);
}

//============================================================================
// Level sets
//============================================================================

struct LevelSet {
  std::vector<std::size_t> indices;  // grid indices with value strictly below epsilon
  double epsilon = 0.0;
};

inline LevelSet level_set(const SymmetryProfile& prof) {
  LevelSet out;
  out.epsilon = prof.epsilon;
  for (std::size_t i = 0; i < prof.values.size(); ++i)
    if (prof.values[i] < prof.epsilon) out.indices.push_back(i);
  return out;
}

// Hausdorff distance between two finite axis sets under axial_distance.
inline double hausdorff_axial(const std::vector<AxisAngle>& a,
                              const std::vector<AxisAngle>& b) {
  require(!a.empty() && !b.empty(), "Hausdorff distance needs nonempty sets");
  auto one_sided = [](const std::vector<AxisAngle>& from,
                      const std::vector<AxisAngle>& to) {
    double worst = 0.0;
    for (const AxisAngle& x : from) {
      double best = kPi;
      for (const AxisAngle& y : to) best = std::min(best, axial_distance(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace axsym
