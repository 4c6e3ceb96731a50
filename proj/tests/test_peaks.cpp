#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "axsym/peaks.hpp"
#include "helpers.hpp"

using namespace axsym;

namespace {

std::vector<double> cosine_signal(std::size_t n, int q, double shift = 0.0) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    s[i] = 1.0 - std::cos(2.0 * q * (theta - shift));
  }
  return s;
}

SymmetryProfile synthetic_profile(const std::vector<double>& values) {
  SymmetryProfile p;
  p.values = values;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i)
    p.grid_angles.push_back(kTwoPi * static_cast<double>(i) /
                            static_cast<double>(n));
  p.n = 1000;
  p.k = 50;
  p.epsilon = epsilon_n(1000);
  return p;
}

}  // namespace

TEST_CASE("AMPD input validation") {
  CHECK_THROWS_AS(ampd_minima(std::vector<double>(7, 0.0), true),
                  validation_error);
  // Constant signal: no strict extremum at any scale.
  const PeakResult flat = ampd_minima(std::vector<double>(64, 2.5), true);
  CHECK(flat.minima_indices.empty());
  CHECK(flat.minima_angles.empty());
}

TEST_CASE("AMPD on the four-basin cosine") {
  const std::vector<double> s = cosine_signal(200, 2);  // 1 - cos(4 theta)
  const PeakResult res = ampd_minima(s, true);
  CHECK(res.minima_indices == std::vector<std::size_t>{0, 50, 100, 150});
  // Mod-pi deduplication folds the four circular minima onto two axes.
  REQUIRE(res.minima_angles.size() == 2);
  CHECK(res.minima_angles[0].theta == Catch::Approx(0.0).margin(1e-12));
  CHECK(res.minima_angles[1].theta == Catch::Approx(kPi / 2.0).margin(1e-12));
}

TEST_CASE("AMPD circular shift equivariance") {
  // Rotating the signal rotates the detected minima by the same offset.
  std::vector<double> s = cosine_signal(120, 2);
  Rng rng(5);
  for (double& v : s) v += 0.01 * rng.uniform();  // mild deterministic noise

  const PeakResult base = ampd_minima(s, true);
  REQUIRE(!base.minima_indices.empty());

  const std::size_t shift = 37;
  std::vector<double> shifted(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    shifted[(i + shift) % s.size()] = s[i];
  const PeakResult moved = ampd_minima(shifted, true);

  std::vector<std::size_t> expected;
  for (std::size_t i : base.minima_indices)
    expected.push_back((i + shift) % s.size());
  std::sort(expected.begin(), expected.end());
  CHECK(moved.minima_indices == expected);
}

TEST_CASE("cosine family yields q axes") {
  for (int q = 1; q <= 4; ++q) {
    const SymmetryProfile p = synthetic_profile(cosine_signal(200, q, 0.4));
    const PeakResult res = axes_from_profile(p);
    INFO("q = " << q);
    CHECK(res.minima_angles.size() == static_cast<std::size_t>(q));
    // All reported axes live in [0, pi).
    for (const AxisAngle& a : res.minima_angles) {
      CHECK(a.theta >= 0.0);
      CHECK(a.theta < kPi);
    }
    // Axis count never exceeds the raw minima count.
    CHECK(res.minima_angles.size() <= res.minima_indices.size());
  }
}

TEST_CASE("deduplication keeps the better antipodal copy") {
  // Two clean pi-periodic basins: each axis is reported once even though it
  // appears twice on the circle.
  const SymmetryProfile p = synthetic_profile(cosine_signal(96, 1, 0.7));
  const PeakResult res = axes_from_profile(p);
  REQUIRE(res.minima_angles.size() == 1);
  CHECK(axial_distance(res.minima_angles[0], AxisAngle(0.7)) <
        kTwoPi / 96.0 + 1e-12);
  // Raw indices strictly increasing.
  for (std::size_t i = 1; i < res.minima_indices.size(); ++i)
    CHECK(res.minima_indices[i] > res.minima_indices[i - 1]);
}

TEST_CASE("profile pipeline recovers a constructed mirror axis") {
  // End-to-end on generated data with one true axis at 25 degrees.
  Rng rng(8181);
  const PointCloud cloud = testutil::mirrored_cloud(700, 25.0 * kPi / 180.0, rng);
  const SymmetryProfile prof = profile(cloud, 200, 50, Rng(42));
  const PeakResult res = axes_from_profile(prof);
  REQUIRE(!res.minima_angles.empty());
  // The construction axis is the global minimum among reported axes.
  std::size_t best = 0;
  for (std::size_t i = 1; i < res.axis_values.size(); ++i)
    if (res.axis_values[i] < res.axis_values[best]) best = i;
  CHECK(axial_distance(res.minima_angles[best], AxisAngle(25.0 * kPi / 180.0)) <
        2.0 * kPi / 180.0);
}

TEST_CASE("axis matching") {
  const std::vector<AxisAngle> truth{AxisAngle(45.0 * kPi / 180.0),
                                     AxisAngle(135.0 * kPi / 180.0)};

  const MatchResult exact = match_axes(truth, truth);
  CHECK(exact.errors == std::vector<double>{0.0, 0.0});
  CHECK(exact.mean_error == 0.0);

  const std::vector<AxisAngle> est{AxisAngle(44.0 * kPi / 180.0),
                                   AxisAngle(136.0 * kPi / 180.0)};
  const MatchResult near = match_axes(est, truth);
  REQUIRE(near.errors.size() == 2);
  CHECK(near.errors[0] == Catch::Approx(kPi / 180.0));
  CHECK(near.errors[1] == Catch::Approx(kPi / 180.0));
  CHECK(near.mean_error == Catch::Approx(kPi / 180.0));
  CHECK(near.matched_truth == std::vector<std::size_t>{0, 1});

  // Many-to-one nearest match.
  const MatchResult single =
      match_axes({AxisAngle(10.0 * kPi / 180.0)},
                 {AxisAngle(0.0), AxisAngle(kPi / 2.0)});
  CHECK(single.matched_truth == std::vector<std::size_t>{0});
  CHECK(single.errors[0] == Catch::Approx(10.0 * kPi / 180.0));

  CHECK_THROWS_AS(match_axes({}, truth), validation_error);
  CHECK_THROWS_AS(match_axes(truth, {}), validation_error);
}
