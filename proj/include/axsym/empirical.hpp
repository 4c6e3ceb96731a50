#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "axsym/error.hpp"
#include "axsym/geometry.hpp"

namespace axsym {

// Projections of a point set onto a direction, sorted ascending.
inline std::vector<double> project(const std::vector<Point>& pts,
                                   const UnitVector& h) {
  require(!pts.empty(), "cannot project an empty point set");
  std::vector<double> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(p[0] * h.x + p[1] * h.y);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Same, onto raw components. Used for reflected directions: the image of a
// unit vector under an exact reflection must be consumed bit for bit, not
// routed through the UnitVector constructor, whose renormalization can move
// the components by an ulp and break the adjoint identity
// <R x, h> == <x, R h> in the exactly representable cases.
inline std::vector<double> project_raw(const std::vector<Point>& pts,
                                       const Point& dir) {
  require(!pts.empty(), "cannot project an empty point set");
  std::vector<double> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(p[0] * dir[0] + p[1] * dir[1]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Exact two-sample Kolmogorov-Smirnov statistic,
//   sup_t |F_a(t) - F_b(t)|,
// for sorted inputs. One merge pass; each distinct value is consumed on both
// sides before the gap is measured, which handles ties exactly. The sup over
// a half-open tail once one sample is exhausted is attained at its first
// point, hence the two closing terms.
inline double ks_two_sample(const std::vector<double>& a,
                            const std::vector<double>& b) {
  require(!a.empty() && !b.empty(), "KS statistic needs nonempty samples");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  if (i < a.size())
    d = std::max(d, 1.0 - static_cast<double>(i) / na);
  else if (j < b.size())
    d = std::max(d, 1.0 - static_cast<double>(j) / nb);
  return d;
}

// Quadratic-time reference: evaluates both one-sided limits of
// |F_a - F_b| at every pooled value. Intended for small samples.
inline double ks_two_sample_bruteforce(const std::vector<double>& a,
                                       const std::vector<double>& b) {
  require(!a.empty() && !b.empty(), "KS statistic needs nonempty samples");
  std::vector<double> pooled;
  pooled.reserve(a.size() + b.size());
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  auto cdf_at = [](const std::vector<double>& s, double t) {
    std::size_t c = 0;
    for (double v : s)
      if (v <= t) ++c;
    return static_cast<double>(c) / static_cast<double>(s.size());
  };
  auto cdf_below = [](const std::vector<double>& s, double t) {
    std::size_t c = 0;
    for (double v : s)
      if (v < t) ++c;
    return static_cast<double>(c) / static_cast<double>(s.size());
  };
  double d = 0.0;
  for (double t : pooled) {
    d = std::max(d, std::abs(cdf_at(a, t) - cdf_at(b, t)));
    d = std::max(d, std::abs(cdf_below(a, t) - cdf_below(b, t)));
  }
  return d;
}

}  // namespace axsym
