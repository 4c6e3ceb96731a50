#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "axsym/error.hpp"
#include "axsym/estimator.hpp"
#include "axsym/geometry.hpp"
#include "axsym/parallel.hpp"
#include "axsym/peaks.hpp"
#include "axsym/rng.hpp"

namespace axsym {

//============================================================================
// Configuration
//============================================================================

enum class Scenario {
  gaussian_rho,        // correlated bivariate normal, axes at 45 and 135 deg
  uniform_square,      // uniform on [-1,1]^2, axes at 0, 45, 90, 135 deg
  spherical_gaussian,  // isotropic normal, every direction is an axis
  custom_mirror,       // asymmetric half cloud plus its exact reflection
};

struct ScenarioConfig {
  Scenario scenario = Scenario::gaussian_rho;
  double rho = 0.7;           // gaussian_rho only
  double mirror_angle = 0.0;  // custom_mirror only, radians
  std::size_t n = 1000;
  std::size_t k = 50;
  std::size_t grid_size = 200;
  std::size_t replications = 1;
  std::uint64_t base_seed = 0;
};

inline void validate(const ScenarioConfig& cfg) {
  require(cfg.n >= 4, "scenario needs n >= 4");
  require(cfg.k >= 1, "scenario needs k >= 1");
  require(cfg.grid_size >= 2, "scenario needs grid_size >= 2");
  require(cfg.replications >= 1, "scenario needs replications >= 1");
  if (cfg.scenario == Scenario::gaussian_rho)
    require(std::abs(cfg.rho) < 1.0, "gaussian correlation must satisfy |rho| < 1");
  if (cfg.scenario == Scenario::custom_mirror)
    require(cfg.n % 2 == 0, "custom_mirror needs an even n");
}

// Stream salts: one generator stream and one profile stream per replication.
inline constexpr std::uint64_t kGenerateSalt = 0xA5A5A5A5A5A5A5A5ULL;
inline constexpr std::uint64_t kProfileSalt = 0x5A5A5A5A5A5A5A5AULL;

//============================================================================
// Sampling
//============================================================================

namespace detail {

// Half cloud for custom_mirror before reflection: a one-sided crescent.
// Angle pulls toward 0 with density Beta(1,4) stretched over 150 degrees
// (inverse CDF 1 - (1-u)^{1/4}), radius is 1 + 0.06 N(0,1). The shape has
// no axial symmetry of its own, so the mirrored cloud has exactly one axis.
inline Point crescent_point(Rng& rng) {
  const double u = rng.uniform();
  const double phi = (5.0 * kPi / 6.0) * (1.0 - std::pow(1.0 - u, 0.25));
  const double r = 1.0 + 0.06 * rng.normal();
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace detail

// Draws replication `rep` of the configured scenario. Deterministic in
// (cfg.base_seed, rep); consumption order per point is documented inline.
inline PointCloud generate(const ScenarioConfig& cfg, std::size_t rep) {
  validate(cfg);
  Rng rng(derive_stream(replication_seed(cfg.base_seed, rep), kGenerateSalt));
  PointCloud cloud;
  cloud.points.reserve(cfg.n);
  switch (cfg.scenario) {
    case Scenario::gaussian_rho: {
      // Cholesky of [[1, rho], [rho, 1]]: x = z1, y = rho z1 + sqrt(1-rho^2) z2.
      const double s = std::sqrt(1.0 - cfg.rho * cfg.rho);
      for (std::size_t i = 0; i < cfg.n; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        cloud.points.push_back({z1, cfg.rho * z1 + s * z2});
      }
      break;
    }
    case Scenario::uniform_square: {
      for (std::size_t i = 0; i < cfg.n; ++i) {
        const double x = 2.0 * rng.uniform() - 1.0;
        const double y = 2.0 * rng.uniform() - 1.0;
        cloud.points.push_back({x, y});
      }
      break;
    }
    case Scenario::spherical_gaussian: {
      for (std::size_t i = 0; i < cfg.n; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        cloud.points.push_back({z1, z2});
      }
      break;
    }
    case Scenario::custom_mirror: {
      const UnitVector axis = UnitVector::from_angle(cfg.mirror_angle);
      const std::size_t half = cfg.n / 2;
      for (std::size_t i = 0; i < half; ++i)
        cloud.points.push_back(detail::crescent_point(rng));
      // Second block: exact reflections of the first, in the same order.
      for (std::size_t i = 0; i < half; ++i)
        cloud.points.push_back(apply_reflection(axis, cloud.points[i]));
      break;
    }
  }
  return cloud;
}

//============================================================================
// Ground truth
//============================================================================

struct TrueAxes {
  bool all_directions = false;  // isotropic case: every direction is an axis
  std::vector<AxisAngle> axes;  // finite case
};

inline TrueAxes true_axes(const ScenarioConfig& cfg) {
  TrueAxes out;
  switch (cfg.scenario) {
    case Scenario::gaussian_rho:
      if (cfg.rho == 0.0) {
        out.all_directions = true;
      } else {
        out.axes = {AxisAngle(kPi / 4.0), AxisAngle(3.0 * kPi / 4.0)};
      }
      break;
    case Scenario::uniform_square:
      out.axes = {AxisAngle(0.0), AxisAngle(kPi / 4.0), AxisAngle(kPi / 2.0),
                  AxisAngle(3.0 * kPi / 4.0)};
      break;
    case Scenario::spherical_gaussian:
      out.all_directions = true;
      break;
    case Scenario::custom_mirror:
      out.axes = {AxisAngle(cfg.mirror_angle)};
      break;
  }
  return out;
}

//============================================================================
// Population discrepancy for centered Gaussians
//============================================================================

namespace detail {

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / 1.4142135623730951);
}

}  // namespace detail

// KS distance between the projection laws N(0, h' S h) and N(0, (R_u h)' S (R_u h))
// for a centered Gaussian with covariance S. Both laws are centered normals,
// so the sup over t is found by one-dimensional maximization on t > 0.
inline double population_g_gaussian(const UnitVector& u, const UnitVector& h,
                                    const std::array<std::array<double, 2>, 2>& cov) {
  require(std::abs(cov[0][1] - cov[1][0]) <= 1e-12, "covariance must be symmetric");
  require(cov[0][0] > 0.0 && cov[1][1] > 0.0 &&
              cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0] > 0.0,
          "covariance must be positive definite");
  auto quad = [&](double vx, double vy) {
    return vx * (cov[0][0] * vx + cov[0][1] * vy) +
           vy * (cov[1][0] * vx + cov[1][1] * vy);
  };
  const Point g = apply_reflection(u, {h.x, h.y});
  const double s1 = std::sqrt(quad(h.x, h.y));
  const double s2 = std::sqrt(quad(g[0], g[1]));
  if (std::abs(s1 - s2) <= 1e-13 * std::max(s1, s2)) return 0.0;

  auto f = [&](double t) {
    return std::abs(detail::normal_cdf(t / s1) - detail::normal_cdf(t / s2));
  };
  // Golden-section maximization; |Phi(t/s1) - Phi(t/s2)| is unimodal on t > 0.
  const double inv_phi = 0.6180339887498949;
  double lo = 0.0, hi = 8.0 * std::max(s1, s2);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f(0.5 * (lo + hi));
}

//============================================================================
// Monte Carlo studies
//============================================================================

struct RepRecord {
  std::size_t rep = 0;
  std::size_t detected_count = 0;
  std::vector<double> axes_rad;   // detected axes in [0, pi)
  bool has_truth = false;         // false when every direction is an axis
  bool correct = false;           // detected_count equals the true axis count
  bool has_error = false;         // mean_error_rad is meaningful
  double mean_error_rad = 0.0;    // nearest-axis mean error, correct reps only
  std::string failure;            // nonempty if the replication threw
};

struct SimulationReport {
  ScenarioConfig config;
  std::vector<RepRecord> per_replication;
  std::map<std::size_t, std::size_t> count_frequency;  // detected count -> reps
  std::size_t correct_reps = 0;
  bool has_mean_error = false;
  double mean_error_over_correct_rad = 0.0;
};

// Runs all replications of a scenario. Replications are independent: each
// gets its own generator and profile streams derived from (base_seed, rep),
// so results are identical at any thread count.
inline SimulationReport run_study(const ScenarioConfig& cfg, int threads = 1) {
  validate(cfg);
  SimulationReport report;
  report.config = cfg;
  report.per_replication.resize(cfg.replications);
  const TrueAxes truth = true_axes(cfg);

  parallel_for(cfg.replications, threads, [&](std::size_t rep) {
    RepRecord& rec = report.per_replication[rep];
    rec.rep = rep;
    try {
      const PointCloud cloud = generate(cfg, rep);
      const Rng prof_rng(
          derive_stream(replication_seed(cfg.base_seed, rep), kProfileSalt));
      const SymmetryProfile prof =
          profile(cloud, cfg.grid_size, cfg.k, prof_rng, 1);
      const PeakResult peaks = axes_from_profile(prof);
      rec.detected_count = peaks.minima_angles.size();
      for (const AxisAngle& a : peaks.minima_angles)
        rec.axes_rad.push_back(a.theta);
      rec.has_truth = !truth.all_directions;
      if (rec.has_truth) {
        rec.correct = rec.detected_count == truth.axes.size();
        if (rec.correct && rec.detected_count > 0) {
          rec.mean_error_rad =
              match_axes(peaks.minima_angles, truth.axes).mean_error;
          rec.has_error = true;
        }
      }
    } catch (const std::exception& e) {
      rec.failure = e.what();
    }
  });

  double err_sum = 0.0;
  std::size_t err_count = 0;
  for (const RepRecord& rec : report.per_replication) {
    if (!rec.failure.empty()) continue;
    ++report.count_frequency[rec.detected_count];
    if (rec.correct) ++report.correct_reps;
    if (rec.has_error) {
      err_sum += rec.mean_error_rad;
      ++err_count;
    }
  }
  if (err_count > 0) {
    report.has_mean_error = true;
    report.mean_error_over_correct_rad = err_sum / static_cast<double>(err_count);
  }
  return report;
}

}  // namespace axsym
