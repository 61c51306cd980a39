#pragma once

// Test-only oracles. Nothing here calls into the code paths it checks beyond
// the plain data accessors.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cantorifs/intervals.hpp"

namespace oracle {

/// Membership of x in a raw list of closed intervals, without normalization.
inline bool member(const std::vector<cantorifs::Interval>& parts, double x) {
  return std::any_of(parts.begin(), parts.end(), [&](const auto& p) { return p.lo <= x && x <= p.hi; });
}

/// Membership bitmap on the grid (i + 0.5) / n, i < n.
inline std::vector<bool> grid(const std::vector<cantorifs::Interval>& parts, int n = 10000) {
  std::vector<bool> out(n);
  for (int i = 0; i < n; ++i) out[i] = member(parts, (i + 0.5) / n);
  return out;
}

inline std::vector<bool> grid(const cantorifs::IntervalSet& s, int n = 10000) { return grid(s.parts(), n); }

/// Random list of (possibly overlapping) intervals inside [0, 1].
inline std::vector<cantorifs::Interval> random_parts(std::mt19937_64& rng, int max_parts = 6) {
  std::uniform_int_distribution<int> count(0, max_parts);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cantorifs::Interval> out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    double a = u(rng);
    double b = std::min(1.0, a + 0.2 * u(rng));
    out.push_back(cantorifs::Interval{a, b});
  }
  return out;
}

/// Brute-force directed distance sup_{a in A} d(a, B) over a fine sample of A
/// plus every endpoint; exact enough for piecewise-linear distance functions.
inline double brute_hausdorff(const std::vector<cantorifs::Interval>& a, const std::vector<cantorifs::Interval>& b) {
  auto dist = [](const std::vector<cantorifs::Interval>& s, double x) {
    double best = 1e300;
    for (const auto& p : s) best = std::min(best, x < p.lo ? p.lo - x : (x > p.hi ? x - p.hi : 0.0));
    return best;
  };
  auto directed = [&](const auto& s, const auto& t) {
    std::vector<double> cand;
    for (const auto& p : s) {
      cand.push_back(p.lo);
      cand.push_back(p.hi);
      for (const auto& q : t) {
        for (double e : {q.lo, q.hi}) cand.push_back(std::clamp(e, p.lo, p.hi));
        for (const auto& r : t) {
          const double m = 0.5 * (q.hi + r.lo);
          if (p.lo <= m && m <= p.hi) cand.push_back(m);
        }
      }
    }
    double worst = 0.0;
    for (double x : cand) worst = std::max(worst, dist(t, x));
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace oracle
