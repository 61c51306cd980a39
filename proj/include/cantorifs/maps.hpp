#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cantorifs/intervals.hpp"

namespace cantorifs {

struct Affine {
  double slope = 1.0;
  double intercept = 0.0;
};

/// Cubic Hermite data: endpoint values and endpoint derivatives.
struct CubicHermite {
  double y_lo = 0.0;
  double y_hi = 1.0;
  double d_lo = 1.0;
  double d_hi = 1.0;
};

/// One analytic piece of a monotone map.
class Segment {
 public:
  using Kind = std::variant<Affine, CubicHermite>;

  /// Throws ValidationError when the piece is not strictly increasing.
  Segment(double x_lo, double x_hi, Kind kind);

  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }
  const Kind& kind() const noexcept { return kind_; }

  double eval(double x) const noexcept;
  double deriv(double x) const noexcept;
  double y_lo() const noexcept { return eval(x_lo_); }
  double y_hi() const noexcept { return eval(x_hi_); }
  /// Solves eval(x) = y inside the segment by safeguarded Newton.
  double inverse(double y, double eps, int max_iter) const;

 private:
  double x_lo_;
  double x_hi_;
  Kind kind_;
};

/// Piecewise monotone C^1 self-map of [0, 1].
class MapSpec {
 public:
  /// Validates abutting segments, C^1 joins within tolerance and monotonicity.
  MapSpec(std::vector<Segment> segments, std::string label, Tolerance tol = {});

  static MapSpec identity(std::string label = "identity");
  static MapSpec affine(double slope, double intercept, std::string label = "affine");

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::string& label() const noexcept { return label_; }
  const Tolerance& tol() const noexcept { return tol_; }
  std::vector<double> breakpoints() const;  ///< internal breakpoints only

  double eval(double x) const;
  double deriv(double x) const;
  double inverse_eval(double y) const;
  double operator()(double x) const { return eval(x); }

  /// Image of an interval (monotone maps send intervals to intervals).
  Interval image(const Interval& j) const { return Interval{eval(j.lo), eval(j.hi)}; }
  Interval preimage(const Interval& j) const { return Interval{inverse_eval(j.lo), inverse_eval(j.hi)}; }
  IntervalSet image(const IntervalSet& s) const;

  double lower() const { return eval(0.0); }
  double upper() const { return eval(1.0); }

 private:
  const Segment& segment_at(double x) const;
  std::vector<Segment> segments_;
  std::string label_;
  Tolerance tol_;
};

/// Word over {F, G}. The rightmost letter acts first: "FG" means f(g(x)).
class Word {
 public:
  Word() = default;
  explicit Word(std::string letters);

  const std::string& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

double apply_word(const MapSpec& f, const MapSpec& g, const Word& w, double x);
double iterate(const MapSpec& m, int n, double x);
double iterate_inverse(const MapSpec& m, int n, double y);

/// x -> 1 - m(1 - x).
MapSpec symmetry_conjugate(const MapSpec& m);

/// Largest |m(x) - other(x)| over a uniform grid of n + 1 points.
double max_abs_difference(const MapSpec& m, const MapSpec& other, int n = 1000);
/// Largest |1 - f(1 - x) - g(x)| over a uniform grid of n + 1 points.
double symmetry_residual(const MapSpec& f, const MapSpec& g, int n = 1000);

/// A knot of a piecewise-linear derivative profile.
struct SlopeKnot {
  double x;
  double slope;
};

/// Segments of the C^1 map whose derivative interpolates `knots` linearly and
/// whose value at knots.front().x is `y_start`. Each piece is quadratic.
std::vector<Segment> integrate_slope_profile(std::span<const SlopeKnot> knots, double y_start);

/// C^1 increasing segments on [x0, x1] from (x0, y0) to (x1, y1) with end
/// slopes d0 and d1, built from a piecewise-linear derivative that ramps to
/// a plateau. Requires x0 < x1, y0 < y1, d0 > 0, d1 > 0.
std::vector<Segment> monotone_ramp(double x0, double y0, double d0, double x1, double y1, double d1);

/// Segments of `m` cut to [lo, hi]. A cut Hermite piece is re-expressed by
/// its end values and slopes, which reproduces the same cubic.
std::vector<Segment> restrict_segments(const MapSpec& m, double lo, double hi);

/// Serialized form: a JSON document with the label and typed segments.
std::string to_json(const MapSpec& m);
MapSpec map_from_json(std::string_view text, Tolerance tol = {});

}  // namespace cantorifs
