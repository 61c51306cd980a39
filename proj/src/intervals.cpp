#include "cantorifs/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cantorifs/error.hpp"

namespace cantorifs {

void Tolerance::validate() const {
  if (!(eps_newton > 0.0 && eps_newton <= eps_geom && eps_geom < 1e-3)) {
    throw DomainError("tolerance requires 0 < eps_newton <= eps_geom < 1e-3");
  }
  if (max_iter <= 0) throw DomainError("tolerance requires max_iter > 0");
}

Interval::Interval(double l, double h) : lo(l), hi(h) {
  if (!(l <= h)) throw DomainError("interval with lo > hi: [" + format_real(l) + ", " + format_real(h) + "]");
}

Interval Interval::middle_third() const noexcept {
  const double w = (hi - lo) / 3.0;
  Interval r;
  r.lo = lo + w;
  r.hi = hi - w;
  return r;
}

IntervalSet::IntervalSet(std::vector<Interval> parts, double merge_tol) : merge_tol_(merge_tol) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (const auto& p : parts) {
    if (!parts_.empty() && p.lo - parts_.back().hi <= merge_tol_) {
      parts_.back().hi = std::max(parts_.back().hi, p.hi);
    } else {
      parts_.push_back(p);
    }
  }
}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts)
    : IntervalSet(std::vector<Interval>(parts)) {}

std::optional<std::size_t> IntervalSet::find(double x) const noexcept {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& p) { return v < p.lo; });
  if (it == parts_.begin()) return std::nullopt;
  --it;
  if (x <= it->hi) return static_cast<std::size_t>(it - parts_.begin());
  return std::nullopt;
}

bool IntervalSet::contains(double x) const noexcept { return find(x).has_value(); }

double IntervalSet::distance(double x) const {
  if (parts_.empty()) throw DomainError("distance to an empty interval set");
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& p) { return v < p.lo; });
  double best = std::numeric_limits<double>::infinity();
  if (it != parts_.end()) best = it->lo - x;
  if (it != parts_.begin()) {
    const auto& prev = *(it - 1);
    best = std::min(best, x <= prev.hi ? 0.0 : x - prev.hi);
  }
  return best;
}

IntervalSet IntervalSet::eroded(double margin) const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    if (p.hi - p.lo > 2.0 * margin) out.push_back(Interval{p.lo + margin, p.hi - margin});
  }
  return IntervalSet(std::move(out), 0.0);
}

IntervalSet IntervalSet::complement() const {
  // The complement of a closed set is open; we return its closure, which has
  // the same membership grid away from the finitely many endpoints.
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const auto& p : parts_) {
    const double lo = std::clamp(p.lo, 0.0, 1.0);
    if (lo > cursor) out.push_back(Interval{cursor, lo});
    cursor = std::max(cursor, std::clamp(p.hi, 0.0, 1.0));
  }
  if (cursor < 1.0) out.push_back(Interval{cursor, 1.0});
  return IntervalSet(std::move(out), 0.0);
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.parts();
  all.insert(all.end(), b.parts().begin(), b.parts().end());
  return IntervalSet(std::move(all), std::min(a.merge_tol(), b.merge_tol()));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  const auto& pa = a.parts();
  const auto& pb = b.parts();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pa.size() && j < pb.size()) {
    const double lo = std::max(pa[i].lo, pb[j].lo);
    const double hi = std::min(pa[i].hi, pb[j].hi);
    if (lo <= hi) out.push_back(Interval{lo, hi});
    if (pa[i].hi < pb[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out), std::min(a.merge_tol(), b.merge_tol()));
}

double measure(const IntervalSet& a) noexcept {
  double m = 0.0;
  for (const auto& p : a.parts()) m += p.hi - p.lo;
  return m;
}

bool contained_in_interior(const IntervalSet& a, const IntervalSet& b, double margin) {
  for (const auto& p : a.parts()) {
    auto k = b.find(p.mid());
    if (!k) return false;
    const auto& run = b.parts()[*k];
    if (!(run.lo + margin <= p.lo && p.hi <= run.hi - margin)) return false;
    if (run.lo >= p.lo || p.hi >= run.hi) return false;
  }
  return true;
}

namespace {

// sup over x in a of dist(x, b). dist(., b) is piecewise linear on each part
// of a with local maxima only at part endpoints or at gap midpoints of b.
double directed_hausdorff(const IntervalSet& a, const IntervalSet& b) {
  double worst = 0.0;
  const auto& pb = b.parts();
  for (const auto& p : a.parts()) {
    worst = std::max({worst, b.distance(p.lo), b.distance(p.hi)});
    for (std::size_t j = 0; j + 1 < pb.size(); ++j) {
      const double m = 0.5 * (pb[j].hi + pb[j + 1].lo);
      if (p.contains(m)) worst = std::max(worst, b.distance(m));
    }
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) throw DomainError("hausdorff_distance of an empty set");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const IntervalSet& s) {
  for (const auto& p : s.parts()) os << format_real(p.lo) << ',' << format_real(p.hi) << '\n';
}

std::string to_csv(const IntervalSet& s) {
  std::ostringstream os;
  write_csv(os, s);
  return os.str();
}

IntervalSet read_csv(std::istream& is) {
  std::vector<Interval> parts;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("malformed interval csv line: " + line);
    parts.push_back(Interval{std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return IntervalSet(std::move(parts));
}

}  // namespace cantorifs
