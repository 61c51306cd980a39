#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cantorifs {

/// Numerical slack shared by every module.
///
/// eps_geom is the absolute slack for comparing points and interval
/// endpoints, eps_newton the convergence target for inverse evaluation and
/// max_iter the default guard for iterative loops.
struct Tolerance {
  double eps_geom = 1e-9;
  double eps_newton = 1e-12;
  int max_iter = 100;

  /// Throws DomainError unless 0 < eps_newton <= eps_geom < 1e-3 and max_iter > 0.
  void validate() const;
};

/// Closed interval [lo, hi]; degenerate intervals are allowed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h);

  double length() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  /// Strict interior membership with a margin: lo + margin < x < hi - margin.
  bool contains_interior(double x, double margin = 0.0) const noexcept {
    return lo + margin < x && x < hi - margin;
  }
  bool contains(const Interval& o) const noexcept { return lo <= o.lo && o.hi <= hi; }
  /// Middle third, used whenever a comfortably interior sub-interval is needed.
  Interval middle_third() const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint closed intervals, sorted and normalized.
///
/// Construction sorts the parts and merges any two whose gap is at most
/// `merge_tol`. All operations return normalized sets. The merge tolerance
/// travels with the value; binary operations use the smaller of the two.
class IntervalSet {
 public:
  static constexpr double kDefaultMergeTol = 1e-9;

  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts, double merge_tol = kDefaultMergeTol);
  IntervalSet(std::initializer_list<Interval> parts);

  static IntervalSet unit() { return IntervalSet{{Interval{0.0, 1.0}}}; }

  const std::vector<Interval>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  double merge_tol() const noexcept { return merge_tol_; }

  bool contains(double x) const noexcept;
  /// Index of the part containing x, if any.
  std::optional<std::size_t> find(double x) const noexcept;
  /// Distance from x to the set; throws DomainError when empty.
  double distance(double x) const;

  /// Shrinks every part by `margin` at both ends, dropping parts that vanish.
  IntervalSet eroded(double margin) const;
  /// Complement within [0, 1].
  IntervalSet complement() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
  double merge_tol_ = kDefaultMergeTol;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
double measure(const IntervalSet& a) noexcept;

/// True iff every part of `a` sits inside a single part of `b` with at least
/// `margin` to spare at both ends.
bool contained_in_interior(const IntervalSet& a, const IntervalSet& b, double margin);

/// Hausdorff distance between two non-empty closed sets, computed exactly over
/// the normalized parts. Throws DomainError on empty input.
double hausdorff_distance(const IntervalSet& a, const IntervalSet& b);

/// `lo,hi` per line with 17 significant digits.
void write_csv(std::ostream& os, const IntervalSet& s);
std::string to_csv(const IntervalSet& s);
IntervalSet read_csv(std::istream& is);

/// printf("%.17g") formatting shared by every serializer.
std::string format_real(double x);

}  // namespace cantorifs
