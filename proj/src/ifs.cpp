#include "cantorifs/ifs.hpp"

#include <algorithm>
#include <cmath>

#include "cantorifs/error.hpp"
#include "cantorifs/json_io.hpp"

namespace cantorifs {

IFSPair::IFSPair(MapSpec f, MapSpec g, Tolerance tol)
    : f_(std::move(f)), g_(std::move(g)), overlap_(g_.eval(0.0), f_.eval(1.0)), tol_(tol) {}

std::variant<IFSPair, ClassAViolation> validate_class_a(const MapSpec& f, const MapSpec& g, int grid_n,
                                                        Tolerance tol) {
  const double eps = tol.eps_geom;
  if (std::abs(f.eval(0.0)) > eps) return ClassAViolation{"f(0) = 0", 0.0, "f(0) = " + format_real(f.eval(0.0))};
  if (std::abs(g.eval(1.0) - 1.0) > eps) {
    return ClassAViolation{"g(1) = 1", 1.0, "g(1) = " + format_real(g.eval(1.0))};
  }
  std::vector<double> sites;
  sites.reserve(grid_n + 64);
  for (int i = 1; i < grid_n; ++i) sites.push_back(static_cast<double>(i) / grid_n);
  for (double b : f.breakpoints()) sites.push_back(b);
  for (double b : g.breakpoints()) sites.push_back(b);
  for (double x : sites) {
    if (x <= 0.0 || x >= 1.0) continue;
    const double fx = f.eval(x);
    if (!(x - fx >= eps)) {
      return ClassAViolation{"f(x) < x", x, "f(x) - x = " + format_real(fx - x)};
    }
    const double gx = g.eval(x);
    if (!(gx - x >= eps)) {
      return ClassAViolation{"x < g(x)", x, "g(x) - x = " + format_real(gx - x)};
    }
  }

  const double g0 = g.eval(0.0);
  const double f1 = f.eval(1.0);
  const std::string order = "g(0) = " + format_real(g0) + ", f(1) = " + format_real(f1);
  if (!(g0 >= eps)) return ClassAViolation{"0 < g(0) < f(1) < 1", 0.0, order};
  if (!(f1 - g0 >= eps)) return ClassAViolation{"0 < g(0) < f(1) < 1", g0, order};
  if (!(1.0 - f1 >= eps)) return ClassAViolation{"0 < g(0) < f(1) < 1", 1.0, order};
  return IFSPair(f, g, tol);
}

IFSPair IFSPair::make(MapSpec f, MapSpec g, int grid_n, Tolerance tol) {
  auto r = validate_class_a(f, g, grid_n, tol);
  if (auto* v = std::get_if<ClassAViolation>(&r)) {
    throw ValidationError("class A violation '" + v->bullet + "' at x = " + format_real(v->witness) + " (" +
                          v->detail + ")");
  }
  return std::get<IFSPair>(std::move(r));
}

Interval fundamental_domain(const IFSPair& p, Which which, int n) {
  if (n < 0) throw DomainError("fundamental domain index must be non-negative");
  if (which == Which::F) {
    const double hi = iterate(p.f(), n, 1.0);
    return Interval{p.f().eval(hi), hi};
  }
  const double lo = iterate(p.g(), n, 0.0);
  return Interval{lo, p.g().eval(lo)};
}

bool OrbitCloud::near(double x, double slack) const {
  auto it = std::lower_bound(points.begin(), points.end(), x - slack);
  return it != points.end() && *it <= x + slack;
}

std::size_t OrbitCloud::count_inside(const Interval& j, double margin) const {
  auto lo = std::upper_bound(points.begin(), points.end(), j.lo + margin);
  auto hi = std::lower_bound(points.begin(), points.end(), j.hi - margin);
  return lo < hi ? static_cast<std::size_t>(hi - lo) : 0;
}

namespace {

void dedup(std::vector<double>& v, double eps) {
  std::sort(v.begin(), v.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (out == 0 || v[i] - v[out - 1] > eps) v[out++] = v[i];
  }
  v.resize(out);
}

}  // namespace

OrbitCloud orbit(const IFSPair& p, double seed, int depth, std::size_t cap) {
  if (depth < 0) throw DomainError("orbit depth must be non-negative");
  if (seed < 0.0 || seed > 1.0) throw DomainError("orbit seed outside [0,1]");
  const double eps = p.tol().eps_geom;
  std::vector<double> level{seed};
  std::vector<double> all{seed};
  for (int d = 1; d <= depth; ++d) {
    std::vector<double> next;
    next.reserve(2 * level.size());
    for (double x : level) {
      next.push_back(p.f().eval(x));
      next.push_back(p.g().eval(x));
    }
    // Exact-ish merge per level so the expanding pieces cannot drift a
    // representative; the coarse merge applies to the accumulated cloud.
    dedup(next, 1e-3 * eps);
    all.insert(all.end(), next.begin(), next.end());
    dedup(all, eps);
    if (all.size() > cap) {
      throw ResourceError("orbit exceeds " + std::to_string(cap) + " points at depth " + std::to_string(d));
    }
    level = std::move(next);
  }
  return OrbitCloud{std::move(all), depth, seed};
}

IntervalSet cover_of(const OrbitCloud& cloud, double resolution) {
  std::vector<Interval> parts;
  parts.reserve(cloud.points.size());
  for (double x : cloud.points) {
    parts.push_back(Interval{std::max(0.0, x - resolution), std::min(1.0, x + resolution)});
  }
  return IntervalSet(std::move(parts));
}

IntervalSet minimal_set_cover(const IFSPair& p, int depth, double resolution, double seed) {
  if (depth < 1) throw DomainError("minimal_set_cover requires depth >= 1");
  if (!(resolution > 0.0)) throw DomainError("minimal_set_cover requires a positive resolution");
  return cover_of(orbit(p, seed, depth), resolution);
}

std::string to_csv(const OrbitCloud& cloud) {
  std::string out;
  out.reserve(cloud.points.size() * 24);
  for (double x : cloud.points) {
    out += format_real(x);
    out += '\n';
  }
  return out;
}

std::string write_pair_file(const PairFile& pf) {
  Json j;
  j["format"] = "cantorifs-pair-1";
  j["f"] = to_json_value(pf.f);
  j["g"] = to_json_value(pf.g);
  j["metadata"] = Json::parse(pf.metadata_json);
  return j.dump(2) + "\n";
}

PairFile read_pair_file(const std::string& text, Tolerance tol) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("pair file is not valid JSON: ") + e.what());
  }
  if (!j.contains("f") || !j.contains("g")) throw ValidationError("pair file needs 'f' and 'g'");
  PairFile pf{map_from_json_value(j["f"], tol), map_from_json_value(j["g"], tol),
              j.contains("metadata") ? j["metadata"].dump() : std::string("{}")};
  return pf;
}

}  // namespace cantorifs
