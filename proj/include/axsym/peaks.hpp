#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "axsym/error.hpp"
#include "axsym/estimator.hpp"
#include "axsym/geometry.hpp"

namespace axsym {

struct PeakResult {
  std::vector<std::size_t> minima_indices;  // raw minima, strictly increasing
  std::vector<std::size_t> axis_indices;    // one representative index per axis
  std::vector<AxisAngle> minima_angles;     // grid angles mod pi, deduplicated
  std::vector<double> axis_values;          // signal value at each representative
  std::size_t scale_lambda = 0;             // selected AMPD scale
};

namespace detail {

struct AmpdRaw {
  std::vector<std::size_t> indices;
  std::size_t lambda = 0;
};

// Automatic multiscale peak detection on the negated signal, with strict
// comparisons and the constant 1 in place of the original's random fill
// (only row-sum ordering matters; a constant keeps it and is reproducible).
// Row k marks i when s[i] < s[i-k] and s[i] < s[i+k], k = 1..ceil(N/2)-1;
// lambda is the row with the fewest unmarked cells, first row on ties; a
// minimum must be marked at every scale up to lambda. Circular mode wraps
// indices mod N; linear mode leaves boundary-incomplete cells unmarked.
inline AmpdRaw ampd_raw(const std::vector<double>& signal, bool circular) {
  const std::size_t n = signal.size();
  require(n >= 8, "AMPD needs a signal of length >= 8");
  const std::size_t kmax = (n + 1) / 2 - 1;

  std::vector<std::vector<char>> marked(kmax + 1);
  std::vector<std::size_t> unmarked_count(kmax + 1, 0);
  for (std::size_t k = 1; k <= kmax; ++k) {
    marked[k].assign(n, 0);
    std::size_t count = n;
    for (std::size_t i = 0; i < n; ++i) {
      double left, right;
      if (circular) {
        left = signal[(i + n - k) % n];
        right = signal[(i + k) % n];
      } else {
        if (i < k || i + k >= n) continue;
        left = signal[i - k];
        right = signal[i + k];
      }
      if (signal[i] < left && signal[i] < right) {
        marked[k][i] = 1;
        --count;
      }
    }
    unmarked_count[k] = count;
  }

  AmpdRaw out;
  out.lambda = 1;
  for (std::size_t k = 2; k <= kmax; ++k)
    if (unmarked_count[k] < unmarked_count[out.lambda]) out.lambda = k;
  for (std::size_t i = 0; i < n; ++i) {
    bool all = true;
    for (std::size_t k = 1; k <= out.lambda; ++k)
      if (!marked[k][i]) {
        all = false;
        break;
      }
    if (all) out.indices.push_back(i);
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Mod-pi deduplication: raw minima whose angles differ by pi within one grid
// step name the same axis. Each cluster keeps the member with the smaller
// value, earlier index on ties. Angles and values are indexed by grid index.
inline PeakResult finalize_axes(const AmpdRaw& raw,
                                const std::vector<double>& values,
                                const std::vector<double>& angles,
                                double step) {
  PeakResult out;
  out.minima_indices = raw.indices;
  out.scale_lambda = raw.lambda;
  const std::size_t c = raw.indices.size();
  if (c == 0) return out;

  UnionFind uf(c);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a + 1; b < c; ++b) {
      const double da =
          std::abs(angles[raw.indices[a]] - angles[raw.indices[b]]);
      if (std::abs(da - kPi) <= step + 1e-12) uf.unite(a, b);
    }

  std::vector<std::size_t> best(c, c);  // cluster root -> best member so far
  for (std::size_t a = 0; a < c; ++a) {
    const std::size_t root = uf.find(a);
    if (best[root] == c) {
      best[root] = a;
      continue;
    }
    if (values[raw.indices[a]] < values[raw.indices[best[root]]])
      best[root] = a;
  }
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < c; ++a)
    if (best[a] != c) reps.push_back(raw.indices[best[a]]);
  std::sort(reps.begin(), reps.end());

  for (std::size_t idx : reps) {
    out.axis_indices.push_back(idx);
    out.minima_angles.push_back(AxisAngle(angles[idx]));
    out.axis_values.push_back(values[idx]);
  }
  return out;
}

}  // namespace detail

// Local minima of a signal sampled on the implicit circular grid 2*pi*i/N.
inline PeakResult ampd_minima(const std::vector<double>& signal, bool circular) {
  const detail::AmpdRaw raw = detail::ampd_raw(signal, circular);
  const std::size_t n = signal.size();
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i)
    angles[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return detail::finalize_axes(raw, signal, angles,
                               kTwoPi / static_cast<double>(n));
}

// Axes of a symmetry profile. Detection runs AMPD in linear mode: the
// profile is exactly pi-periodic (antipodal values are equal), so in
// circular mode the row at k = N/4 compares each cell against two equal
// neighbours and marks half the circle, dragging lambda to N/4 and
// collapsing distinct axes. Linear mode leaves boundary windows unmarked;
// the minimum at index 0, when real, is recovered through its antipodal
// copy at index N/2 by the mod-pi deduplication.
inline PeakResult axes_from_profile(const SymmetryProfile& prof) {
  require(prof.values.size() == prof.grid_angles.size(),
          "profile grid/value length mismatch");
  const detail::AmpdRaw raw = detail::ampd_raw(prof.values, false);
  return detail::finalize_axes(
      raw, prof.values, prof.grid_angles,
      kTwoPi / static_cast<double>(prof.grid_angles.size()));
}

//============================================================================
// Matching against reference axes
//============================================================================

struct MatchResult {
  std::vector<std::size_t> matched_truth;  // per estimated axis
  std::vector<double> errors;              // axial distances, radians
  double mean_error = 0.0;
};

// Nearest-reference assignment, many-to-one: each estimated axis is scored
// against its closest reference axis.
inline MatchResult match_axes(const std::vector<AxisAngle>& estimated,
                              const std::vector<AxisAngle>& reference) {
  require(!estimated.empty(), "match_axes needs estimated axes");
  require(!reference.empty(), "match_axes needs reference axes");
  MatchResult out;
  double sum = 0.0;
  for (const AxisAngle& e : estimated) {
    std::size_t arg = 0;
    double best = axial_distance(e, reference[0]);
    for (std::size_t j = 1; j < reference.size(); ++j) {
      const double d = axial_distance(e, reference[j]);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    out.matched_truth.push_back(arg);
    out.errors.push_back(best);
    sum += best;
  }
  out.mean_error = sum / static_cast<double>(estimated.size());
  return out;
}

}  // namespace axsym
