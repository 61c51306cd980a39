#include "cantorifs/maps.hpp"

#include <algorithm>
#include <cmath>

#include "cantorifs/error.hpp"
#include "cantorifs/json_io.hpp"

namespace cantorifs {

namespace {

constexpr double kDerivJoinRel = 1e-6;
constexpr double kDomainSlack = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Coefficients of the derivative p'(x) = a t^2 + b t + c, t in [0, 1].
struct QuadDeriv {
  double a, b, c;
  double at(double t) const { return (a * t + b) * t + c; }
  double min_on_unit() const {
    double m = std::min(at(0.0), at(1.0));
    if (a > 0.0) {
      const double t = -b / (2.0 * a);
      if (t > 0.0 && t < 1.0) m = std::min(m, at(t));
    }
    return m;
  }
};

QuadDeriv hermite_deriv(const CubicHermite& c, double h) {
  const double y0 = c.y_lo;
  const double y1 = c.y_hi;
  return QuadDeriv{(6.0 * y0 + 3.0 * h * c.d_lo - 6.0 * y1 + 3.0 * h * c.d_hi) / h,
                   (-6.0 * y0 - 4.0 * h * c.d_lo + 6.0 * y1 - 2.0 * h * c.d_hi) / h, c.d_lo};
}

double clamp_unit(double x, const char* what) {
  if (x < -kDomainSlack || x > 1.0 + kDomainSlack || std::isnan(x)) {
    throw DomainError(std::string(what) + " outside [0,1]: " + format_real(x));
  }
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

Segment::Segment(double x_lo, double x_hi, Kind kind) : x_lo_(x_lo), x_hi_(x_hi), kind_(kind) {
  if (!(x_lo < x_hi)) throw ValidationError("segment requires x_lo < x_hi");
  std::visit(overloaded{[&](const Affine& a) {
                          if (!(a.slope > 0.0)) throw ValidationError("affine segment requires slope > 0");
                        },
                        [&](const CubicHermite& c) {
                          if (!(c.d_lo > 0.0 && c.d_hi > 0.0 && c.y_lo < c.y_hi)) {
                            throw ValidationError("hermite segment requires positive end slopes and y_lo < y_hi");
                          }
                          if (!(hermite_deriv(c, x_hi - x_lo).min_on_unit() > 0.0)) {
                            throw ValidationError("hermite segment is not strictly increasing on [" +
                                                  format_real(x_lo) + ", " + format_real(x_hi) + "]");
                          }
                        }},
             kind_);
}

double Segment::eval(double x) const noexcept {
  return std::visit(overloaded{[&](const Affine& a) { return a.slope * x + a.intercept; },
                               [&](const CubicHermite& c) {
                                 const double h = x_hi_ - x_lo_;
                                 const double t = (x - x_lo_) / h;
                                 const double t2 = t * t;
                                 const double t3 = t2 * t;
                                 return (2 * t3 - 3 * t2 + 1) * c.y_lo + (t3 - 2 * t2 + t) * h * c.d_lo +
                                        (-2 * t3 + 3 * t2) * c.y_hi + (t3 - t2) * h * c.d_hi;
                               }},
                    kind_);
}

double Segment::deriv(double x) const noexcept {
  return std::visit(overloaded{[](const Affine& a) { return a.slope; },
                               [&](const CubicHermite& c) {
                                 const double h = x_hi_ - x_lo_;
                                 return hermite_deriv(c, h).at((x - x_lo_) / h);
                               }},
                    kind_);
}

double Segment::inverse(double y, double eps, int max_iter) const {
  if (const auto* a = std::get_if<Affine>(&kind_)) {
    return std::clamp((y - a->intercept) / a->slope, x_lo_, x_hi_);
  }
  double lo = x_lo_;
  double hi = x_hi_;
  const double ylo = eval(lo);
  const double yhi = eval(hi);
  if (y <= ylo) return lo;
  if (y >= yhi) return hi;
  double x = lo + (hi - lo) * (y - ylo) / (yhi - ylo);
  for (int it = 0; it < max_iter; ++it) {
    const double r = eval(x) - y;
    if (std::abs(r) <= eps * 1e-3) return x;
    if (r > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double step = x - r / deriv(x);
    x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    if (hi - lo < 1e-17) break;
  }
  return x;
}

MapSpec::MapSpec(std::vector<Segment> segments, std::string label, Tolerance tol)
    : segments_(std::move(segments)), label_(std::move(label)), tol_(tol) {
  tol_.validate();
  if (segments_.empty()) throw ValidationError("map '" + label_ + "' has no segments");
  if (segments_.front().x_lo() != 0.0 || segments_.back().x_hi() != 1.0) {
    throw ValidationError("map '" + label_ + "' does not cover [0,1]");
  }
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    const auto& l = segments_[i];
    const auto& r = segments_[i + 1];
    if (l.x_hi() != r.x_lo()) throw ValidationError("map '" + label_ + "' has non-abutting segments");
    const double x = l.x_hi();
    const double jump = std::abs(l.eval(x) - r.eval(x));
    if (jump > tol_.eps_geom) {
      throw ValidationError("map '" + label_ + "' is discontinuous at " + format_real(x) + " (jump " +
                            format_real(jump) + ")");
    }
    const double dl = l.deriv(x);
    const double dr = r.deriv(x);
    if (std::abs(dl - dr) > kDerivJoinRel * std::max({1.0, std::abs(dl), std::abs(dr)})) {
      throw ValidationError("map '" + label_ + "' is not C1 at " + format_real(x) + " (" + format_real(dl) +
                            " vs " + format_real(dr) + ")");
    }
  }
  for (const auto& s : segments_) {
    if (s.y_lo() < -tol_.eps_geom || s.y_hi() > 1.0 + tol_.eps_geom) {
      throw ValidationError("map '" + label_ + "' leaves [0,1]");
    }
  }
}

MapSpec MapSpec::identity(std::string label) { return affine(1.0, 0.0, std::move(label)); }

MapSpec MapSpec::affine(double slope, double intercept, std::string label) {
  return MapSpec({Segment(0.0, 1.0, Affine{slope, intercept})}, std::move(label));
}

std::vector<double> MapSpec::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) out.push_back(segments_[i].x_hi());
  return out;
}

const Segment& MapSpec::segment_at(double x) const {
  auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                             [](const Segment& s, double v) { return s.x_hi() < v; });
  if (it == segments_.end()) --it;
  return *it;
}

double MapSpec::eval(double x) const {
  x = clamp_unit(x, "eval argument");
  return segment_at(x).eval(x);
}

double MapSpec::deriv(double x) const {
  x = clamp_unit(x, "deriv argument");
  return segment_at(x).deriv(x);
}

double MapSpec::inverse_eval(double y) const {
  const double y0 = lower();
  const double y1 = upper();
  if (y < y0 - tol_.eps_newton || y > y1 + tol_.eps_newton || std::isnan(y)) {
    throw RangeError("inverse_eval of " + format_real(y) + " outside image [" + format_real(y0) + ", " +
                     format_real(y1) + "] of '" + label_ + "'");
  }
  y = std::clamp(y, y0, y1);
  auto it = std::lower_bound(segments_.begin(), segments_.end(), y,
                             [](const Segment& s, double v) { return s.y_hi() < v; });
  if (it == segments_.end()) --it;
  return it->inverse(y, tol_.eps_newton, tol_.max_iter);
}

IntervalSet MapSpec::image(const IntervalSet& s) const {
  std::vector<Interval> parts;
  parts.reserve(s.size());
  for (const auto& p : s.parts()) parts.push_back(image(p));
  return IntervalSet(std::move(parts), s.merge_tol());
}

Word::Word(std::string letters) : letters_(std::move(letters)) {
  for (char c : letters_) {
    if (c != 'F' && c != 'G') throw DomainError("word letters must be F or G");
  }
}

double apply_word(const MapSpec& f, const MapSpec& g, const Word& w, double x) {
  const auto& s = w.letters();
  for (auto it = s.rbegin(); it != s.rend(); ++it) x = (*it == 'F') ? f.eval(x) : g.eval(x);
  return x;
}

double iterate(const MapSpec& m, int n, double x) {
  for (int i = 0; i < n; ++i) x = m.eval(x);
  return x;
}

double iterate_inverse(const MapSpec& m, int n, double y) {
  for (int i = 0; i < n; ++i) y = m.inverse_eval(y);
  return y;
}

MapSpec symmetry_conjugate(const MapSpec& m) {
  std::vector<Segment> out;
  const auto& segs = m.segments();
  out.reserve(segs.size());
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    // 1 - (1 - x) need not round-trip, so abut against the previous piece.
    const double lo = out.empty() ? 0.0 : out.back().x_hi();
    const double hi = it + 1 == segs.rend() ? 1.0 : 1.0 - it->x_lo();
    std::visit(overloaded{[&](const Affine& a) {
                            out.emplace_back(lo, hi, Affine{a.slope, 1.0 - a.slope - a.intercept});
                          },
                          [&](const CubicHermite& c) {
                            out.emplace_back(lo, hi, CubicHermite{1.0 - c.y_hi, 1.0 - c.y_lo, c.d_hi, c.d_lo});
                          }},
               it->kind());
  }
  return MapSpec(std::move(out), "conj(" + m.label() + ")", m.tol());
}

double max_abs_difference(const MapSpec& m, const MapSpec& other, int n) {
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    worst = std::max(worst, std::abs(m.eval(x) - other.eval(x)));
  }
  return worst;
}

double symmetry_residual(const MapSpec& f, const MapSpec& g, int n) {
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    worst = std::max(worst, std::abs(1.0 - f.eval(1.0 - x) - g.eval(x)));
  }
  return worst;
}

std::vector<Segment> integrate_slope_profile(std::span<const SlopeKnot> knots, double y_start) {
  std::vector<Segment> out;
  double y = y_start;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const auto& a = knots[i];
    const auto& b = knots[i + 1];
    const double h = b.x - a.x;
    if (h <= 0.0) continue;
    const double y_next = y + 0.5 * h * (a.slope + b.slope);
    if (a.slope == b.slope) {
      out.emplace_back(a.x, b.x, Affine{a.slope, y - a.slope * a.x});
    } else {
      out.emplace_back(a.x, b.x, CubicHermite{y, y_next, a.slope, b.slope});
    }
    y = y_next;
  }
  return out;
}

std::vector<Segment> monotone_ramp(double x0, double y0, double d0, double x1, double y1, double d1) {
  if (!(x0 < x1 && y0 < y1 && d0 > 0.0 && d1 > 0.0)) {
    throw ValidationError("monotone_ramp requires increasing data and positive slopes");
  }
  const double h = x1 - x0;
  const double secant = (y1 - y0) / h;
  if (d0 == secant && d1 == secant) return {Segment(x0, x1, Affine{secant, y0 - secant * x0})};
  const double r = std::min(0.25, secant / (d0 + d1));
  const double plateau = (secant - 0.5 * r * (d0 + d1)) / (1.0 - r);
  const SlopeKnot knots[] = {{x0, d0}, {x0 + r * h, plateau}, {x1 - r * h, plateau}, {x1, d1}};
  auto segs = integrate_slope_profile(knots, y0);
  // Pin the final value so consecutive ramps abut exactly.
  auto& last = segs.back();
  if (const auto* c = std::get_if<CubicHermite>(&last.kind())) {
    last = Segment(last.x_lo(), last.x_hi(), CubicHermite{c->y_lo, y1, c->d_lo, c->d_hi});
  }
  return segs;
}

std::vector<Segment> restrict_segments(const MapSpec& m, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("restrict_segments requires lo < hi");
  std::vector<Segment> out;
  for (const auto& s : m.segments()) {
    const double a = std::max(lo, s.x_lo());
    const double b = std::min(hi, s.x_hi());
    if (!(a < b)) continue;
    if (a == s.x_lo() && b == s.x_hi()) {
      out.push_back(s);
    } else if (const auto* af = std::get_if<Affine>(&s.kind())) {
      out.emplace_back(a, b, *af);
    } else {
      out.emplace_back(a, b, CubicHermite{s.eval(a), s.eval(b), s.deriv(a), s.deriv(b)});
    }
  }
  return out;
}

Json to_json_value(const MapSpec& m) {
  Json segs = Json::array();
  for (const auto& s : m.segments()) {
    Json js;
    js["x_lo"] = s.x_lo();
    js["x_hi"] = s.x_hi();
    std::visit(overloaded{[&](const Affine& a) {
                            js["kind"] = "affine";
                            js["slope"] = a.slope;
                            js["intercept"] = a.intercept;
                          },
                          [&](const CubicHermite& c) {
                            js["kind"] = "hermite";
                            js["y_lo"] = c.y_lo;
                            js["y_hi"] = c.y_hi;
                            js["d_lo"] = c.d_lo;
                            js["d_hi"] = c.d_hi;
                          }},
               s.kind());
    segs.push_back(std::move(js));
  }
  Json j;
  j["label"] = m.label();
  j["segments"] = std::move(segs);
  return j;
}

MapSpec map_from_json_value(const Json& j, Tolerance tol) {
  try {
    std::vector<Segment> segs;
    for (const auto& js : j.at("segments")) {
      const double lo = js.at("x_lo").get<double>();
      const double hi = js.at("x_hi").get<double>();
      const auto kind = js.at("kind").get<std::string>();
      if (kind == "affine") {
        segs.emplace_back(lo, hi, Affine{js.at("slope").get<double>(), js.at("intercept").get<double>()});
      } else if (kind == "hermite") {
        segs.emplace_back(lo, hi,
                          CubicHermite{js.at("y_lo").get<double>(), js.at("y_hi").get<double>(),
                                       js.at("d_lo").get<double>(), js.at("d_hi").get<double>()});
      } else {
        throw ValidationError("unknown segment kind '" + kind + "'");
      }
    }
    return MapSpec(std::move(segs), j.value("label", std::string("map")), tol);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed map document: ") + e.what());
  }
}

std::string to_json(const MapSpec& m) { return to_json_value(m).dump(2); }

MapSpec map_from_json(std::string_view text, Tolerance tol) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("map document is not valid JSON: ") + e.what());
  }
  return map_from_json_value(j, tol);
}

Json to_json_value(const Interval& i) { return Json::array({i.lo, i.hi}); }

Interval interval_from_json_value(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("interval must be a [lo, hi] array");
  return Interval{j[0].get<double>(), j[1].get<double>()};
}

Json to_json_value(const IntervalSet& s) {
  Json a = Json::array();
  for (const auto& p : s.parts()) a.push_back(to_json_value(p));
  return a;
}

}  // namespace cantorifs
