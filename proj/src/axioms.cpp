#include "cantorifs/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cantorifs/error.hpp"

namespace cantorifs {

SoReport check_so(const IFSPair& p) {
  const double f1 = p.f().eval(1.0);
  const double g0 = p.g().eval(0.0);
  SoReport r;
  r.margin_f = g0 - p.f().eval(f1);
  r.margin_g = p.g().eval(g0) - f1;
  r.ok = r.margin_f >= p.tol().eps_geom && r.margin_g >= p.tol().eps_geom;
  return r;
}

bool check_so_containment(const IFSPair& p) {
  const IntervalSet cover(std::vector<Interval>{fundamental_domain(p, Which::F, 1), fundamental_domain(p, Which::G, 1)},
                          0.0);
  return contained_in_interior(IntervalSet({p.overlap()}, 0.0), cover, p.tol().eps_geom);
}

Interval nested_fixed_interval(const MapSpec& f, const MapSpec& g, const Interval& seed, int max_n, Tolerance tol) {
  auto fg = [&](double x) { return f.eval(g.eval(x)); };
  Interval cur = seed;
  const Interval img{fg(seed.lo), fg(seed.hi)};
  if (!(img.lo > seed.lo + tol.eps_geom && img.hi < seed.hi - tol.eps_geom)) {
    throw HypothesisError("f o g does not map [" + format_real(seed.lo) + ", " + format_real(seed.hi) +
                          "] into its interior (image [" + format_real(img.lo) + ", " + format_real(img.hi) + "])");
  }
  for (int i = 0; i < max_n; ++i) {
    const Interval next{fg(cur.lo), fg(cur.hi)};
    const double move = std::max(std::abs(next.lo - cur.lo), std::abs(next.hi - cur.hi));
    cur = next;
    if (move < tol.eps_newton) break;
  }
  if (cur.length() < 10 * tol.eps_geom) {
    throw DegenerateHoleError("nested images shrink to a point near " + format_real(cur.mid()));
  }
  return cur;
}

HolePair find_hole(const IFSPair& p, const Interval& seed, int max_n) {
  const Interval hf = nested_fixed_interval(p.f(), p.g(), seed, max_n, p.tol());
  HolePair h{hf, p.g().image(hf)};
  const auto rep = validate_hole(p, h);
  if (!rep.ok) throw ValidationError("hole property fails: " + rep.message);
  return h;
}

HoReport validate_hole(const IFSPair& p, const HolePair& h) {
  const double eps = p.tol().eps_geom;
  const Interval gh = p.g().image(h.h_f);
  const Interval fh = p.f().image(h.h_g);
  HoReport r;
  r.invariance_residual = std::max({std::abs(gh.lo - h.h_g.lo), std::abs(gh.hi - h.h_g.hi),
                                    std::abs(fh.lo - h.h_f.lo), std::abs(fh.hi - h.h_f.hi)});
  const Interval f1 = fundamental_domain(p, Which::F, 1);
  const Interval g1 = fundamental_domain(p, Which::G, 1);
  const Interval w = p.overlap();
  r.margin_f = std::min(h.h_f.lo - f1.lo, w.lo - h.h_f.hi);
  r.margin_g = std::min(h.h_g.lo - w.hi, g1.hi - h.h_g.hi);
  if (h.h_f.length() <= 0.0 || h.h_g.length() <= 0.0) {
    r.message = "hole has empty interior";
  } else if (r.invariance_residual > eps) {
    r.message = "g(H_f) = H_g, f(H_g) = H_f off by " + format_real(r.invariance_residual);
  } else if (r.margin_f < eps) {
    r.message = "H_f not inside int(F_1 \\ W), margin " + format_real(r.margin_f);
  } else if (r.margin_g < eps) {
    r.message = "H_g not inside int(G_1 \\ W), margin " + format_real(r.margin_g);
  } else {
    r.ok = true;
  }
  return r;
}

InducedPoint induced(const IFSPair& p, Which which, double x) {
  const MapSpec& first = which == Which::F ? p.f() : p.g();
  const MapSpec& other = which == Which::F ? p.g() : p.f();
  const Interval dom = fundamental_domain(p, which, 1);
  const double acc = which == Which::F ? dom.hi : dom.lo;
  if (!dom.contains(x) || x == acc) {
    throw DomainError("induced map argument " + format_real(x) + " outside its domain");
  }
  // Target: G_1 for F, F_1 for G. Iterates of other^{-1} move monotonically
  // toward it, so one threshold decides membership.
  const Interval target = fundamental_domain(p, which == Which::F ? Which::G : Which::F, 1);
  auto landed = [&](double y) { return which == Which::F ? y <= target.hi : y >= target.lo; };

  InducedPoint out;
  double y = first.inverse_eval(x);
  out.deriv = 1.0 / first.deriv(y);
  const int cap = std::max(p.tol().max_iter, 2000);
  while (!landed(y)) {
    if (++out.n > cap) throw ResourceError("induced map exceeded " + std::to_string(cap) + " steps");
    y = other.inverse_eval(y);
    out.deriv /= other.deriv(y);
  }
  out.value = y;
  return out;
}

int induced_n(const IFSPair& p, Which which, double x) { return induced(p, which, x).n; }
double induced_map(const IFSPair& p, Which which, double x) { return induced(p, which, x).value; }
double induced_deriv(const IFSPair& p, Which which, double x) { return induced(p, which, x).deriv; }

std::vector<double> discontinuities(const IFSPair& p, Which which, double min_gap) {
  const MapSpec& first = which == Which::F ? p.f() : p.g();
  const MapSpec& other = which == Which::F ? p.g() : p.f();
  const double acc = which == Which::F ? p.f().eval(1.0) : p.g().eval(0.0);
  double y = which == Which::F ? 0.0 : 1.0;
  y = other.eval(other.eval(y));
  std::vector<double> out;
  for (int m = 2; m < 10000; ++m) {
    const double x = first.eval(y);
    if (std::abs(acc - x) < min_gap) break;
    if (!out.empty() && x == out.back()) break;
    out.push_back(x);
    y = other.eval(y);
  }
  return out;
}

ExpansionReport check_ee(const IFSPair& p, const HolePair& h, double mu_target, int grid_n,
                         const std::vector<double>& extra) {
  if (grid_n < 1) throw DomainError("check_ee needs grid_n >= 1");
  ExpansionReport rep;
  rep.mu_target = mu_target;
  rep.mu = std::numeric_limits<double>::infinity();
  auto sample = [&](Which w, double x) {
    const Interval dom = fundamental_domain(p, w, 1);
    const Interval& hole = w == Which::F ? h.h_f : h.h_g;
    const double acc = w == Which::F ? dom.hi : dom.lo;
    if (!dom.contains(x) || x == acc || hole.contains_interior(x)) return;
    const double d = induced_deriv(p, w, x);
    ++rep.samples;
    if (d < rep.mu) {
      rep.mu = d;
      rep.min_site = x;
      rep.min_map = w;
    }
  };
  const Interval w = p.overlap();
  for (Which which : {Which::F, Which::G}) {
    const Interval dom = fundamental_domain(p, which, 1);
    for (int i = 0; i <= grid_n; ++i) sample(which, dom.lo + dom.length() * i / grid_n);
    for (int i = 0; i < grid_n; ++i) sample(which, w.lo + w.length() * (i + 0.5) / grid_n);
    for (double x : extra) sample(which, x);
  }
  rep.passed = rep.samples > 0 && rep.mu > mu_target && mu_target >= 1.0;
  return rep;
}

RuinationRegions ruination_regions(const IFSPair& p, const HolePair& h, int n_max, double min_length) {
  RuinationRegions r;
  auto build = [&](const MapSpec& last, const MapSpec& step, Interval hole, std::vector<IndexedPart>& parts,
                   int& dropped) {
    // The carried interval shrinks geometrically; stop once it is far below
    // the part threshold, skipping individual parts that are too short.
    for (int n = 0; n <= n_max && hole.length() >= 1e-3 * min_length; ++n) {
      const Interval part = last.image(hole);
      if (part.length() < min_length) {
        ++dropped;
      } else {
        parts.push_back({part, n});
      }
      hole = step.image(hole);
    }
  };
  build(p.f(), p.g(), h.h_g, r.f_parts, r.dropped_f);
  build(p.g(), p.f(), h.h_f, r.g_parts, r.dropped_g);
  std::vector<Interval> fp, gp;
  for (const auto& q : r.f_parts) fp.push_back(q.part);
  for (const auto& q : r.g_parts) gp.push_back(q.part);
  r.r_f = IntervalSet(std::move(fp), 0.0);
  r.r_g = IntervalSet(std::move(gp), 0.0);
  r.n_max = std::max(r.f_parts.empty() ? 0 : r.f_parts.back().n, r.g_parts.empty() ? 0 : r.g_parts.back().n);
  return r;
}

CaReport check_ca(const IFSPair& p, const RuinationRegions& r, double margin) {
  CaReport rep;
  const Interval w = p.overlap();
  auto inside = [&](const std::vector<IndexedPart>& parts, double x) {
    return std::any_of(parts.begin(), parts.end(), [&](const auto& q) { return q.part.contains_interior(x, margin); });
  };
  rep.g0_in_rf = inside(r.f_parts, w.lo);
  rep.f1_in_rg = inside(r.g_parts, w.hi);
  if (!rep.g0_in_rf) {
    rep.witness = w.lo;
    return rep;
  }
  if (!rep.f1_in_rg) {
    rep.witness = w.hi;
    return rep;
  }
  std::vector<Interval> eroded;
  for (const auto* parts : {&r.f_parts, &r.g_parts}) {
    for (const auto& q : *parts) {
      if (q.part.length() > 2 * margin) eroded.push_back(Interval{q.part.lo + margin, q.part.hi - margin});
    }
  }
  const IntervalSet cover(std::move(eroded), 0.0);
  double x = w.lo;
  for (const auto& part : cover.parts()) {
    if (part.hi < x) continue;
    if (part.lo > x) {
      rep.witness = 0.5 * (x + std::min(part.lo, w.hi));
      return rep;
    }
    x = part.hi;
    if (x >= w.hi) break;
  }
  if (x < w.hi) {
    rep.witness = 0.5 * (x + w.hi);
    return rep;
  }
  rep.ok = true;
  return rep;
}

IntervalSet ruination_overlap(const RuinationRegions& r) { return intersect(r.r_f, r.r_g); }

BoundarySets boundary_sets(const IFSPair& p, const HolePair& h, const RuinationRegions& r) {
  BoundarySets b;
  const IntervalSet both = ruination_overlap(r);
  for (const auto& part : both.parts()) {
    for (auto* v : {&b.b_f, &b.b_g}) {
      v->push_back(part.lo);
      v->push_back(part.hi);
    }
  }
  const Interval f1 = fundamental_domain(p, Which::F, 1);
  const Interval g1 = fundamental_domain(p, Which::G, 1);
  b.b_f.insert(b.b_f.end(), {h.h_f.lo, h.h_f.hi, f1.lo, f1.hi});
  b.b_g.insert(b.b_g.end(), {h.h_g.lo, h.h_g.hi, g1.lo, g1.hi});
  for (auto* v : {&b.b_f, &b.b_g}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return b;
}

std::size_t count_hole_violations(const OrbitCloud& cloud, const HolePair& h, double margin) {
  return cloud.count_inside(h.h_f, margin) + cloud.count_inside(h.h_g, margin);
}

}  // namespace cantorifs
