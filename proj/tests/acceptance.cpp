// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cantorifs/error.hpp"
#include "cantorifs/gapfinder.hpp"
#include "fixtures.hpp"

using namespace cantorifs;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
Verdict appendix_bound() {
  const auto ap = appendix_pair(AppendixParams{0.01, 0.45});
  const auto mb = check_measure_bound(ap, 20);
  bool ok = mb.measures.size() == 21;
  double worst_ratio = 0.0;
  for (std::size_t n = 0; n < mb.measures.size(); ++n) ok = ok && mb.measures[n] <= std::pow(0.9, n);
  for (double r : mb.ratios) {
    ok = ok && r <= 0.9;
    worst_ratio = std::max(worst_ratio, r);
  }
  ok = ok && mb.measures[10] <= 0.34868;
  return {ok, fmt("mu(L10)=%.6f", mb.measures[10]) + fmt(" mu(L20)=%.3e", mb.measures[20]) +
                  fmt(" max ratio=%.6f", worst_ratio)};
}

// ---------------------------------------------------------------- criterion 2
Verdict construction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ex = build_class_c_example();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool class_a = std::holds_alternative<IFSPair>(validate_class_a(ex.pair.f(), ex.pair.g()));
  const double geo = std::min({ex.so.margin_f, ex.so.margin_g, ex.ho.margin_f, ex.ho.margin_g});
  const bool ca = check_ca(ex.pair, ex.regions, 1e-9).ok;
  const bool ok = class_a && ex.so.ok && ex.ho.ok && geo >= 1e-9 && ex.ee.passed && ex.ee.mu > 1.0 && ca &&
                  secs <= 300.0;
  return {ok, fmt("min So/Ho margin=%.4g", geo) + fmt(" mu=%.4g", ex.ee.mu) + fmt(" time=%.2fs", secs)};
}

// ---------------------------------------------------------------- criterion 3
Verdict hole() {
  const auto& ex = fixture::example();
  const auto& b = fixture::bump();
  const Interval hp = ex.hole.h_f;
  const Interval back{b.f0.eval(b.g0.eval(hp.lo)), b.f0.eval(b.g0.eval(hp.hi))};
  const double res = std::max(std::abs(back.lo - hp.lo), std::abs(back.hi - hp.hi));
  const auto clean = verify_hole_disjoint(ex.pair, ex.hole, 18);
  HolePair shifted = ex.hole;
  shifted.h_f = Interval{hp.lo + 0.01, hp.hi + 0.01};
  shifted.h_g = Interval{ex.hole.h_g.lo + 0.01, ex.hole.h_g.hi + 0.01};
  const auto control = verify_hole_disjoint(ex.pair, shifted, 18);
  const bool ok = res <= 1e-9 && clean.ok && control.violations > 0;
  return {ok, fmt("invariance residual=%.3e", res) + " violations=" + std::to_string(clean.violations) + "/" +
                  std::to_string(clean.points) + " shifted control=" + std::to_string(control.violations)};
}

// ---------------------------------------------------------------- criterion 4
Verdict gaps() {
  const auto& ex = fixture::example();
  const GapFinder gf(ex.pair, ex.hole, ex.regions, boundary_sets(ex.pair, ex.hole, ex.regions), ex.ee.mu);
  const auto rep = certify_cantor(gf, 1e-2, 14, 18);
  bool bounded = true;
  for (const auto& c : rep.certificates) {
    const auto steps = std::count_if(c.trace.begin(), c.trace.end(),
                                     [](const TraceStep& s) { return s.first_count + s.other_count > 0; });
    bounded = bounded && steps <= gf.iteration_bound(c.input.length());
    bounded = bounded && c.orbit_hits && *c.orbit_hits == 0;
  }
  const bool ok = rep.all_certified() && bounded && rep.certificates.size() + rep.skipped == rep.grid_total;
  return {ok, std::to_string(rep.certificates.size()) + "/" + std::to_string(rep.attempted()) +
                  " certified, skipped " + std::to_string(rep.skipped) + fmt(", min gap=%.3e", rep.min_gap) +
                  ", max trace " + std::to_string(rep.max_trace)};
}

// ---------------------------------------------------------------- criterion 5
// Least n with f^{-1}(x) <= g^{n+2}(0), using forward iterates and bisection only.
int induced_n_oracle(const IFSPair& p, double x) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p.f().eval(mid) < x ? lo : hi) = mid;
  }
  const double y = 0.5 * (lo + hi);
  double t = p.g().eval(p.g().eval(0.0));
  for (int n = 0; n < 5000; ++n) {
    if (y <= t) return n;
    t = p.g().eval(t);
  }
  return -1;
}

void words(const IFSPair& p, double x, int depth, std::vector<double>& out) {
  out.push_back(x);
  if (depth == 0) return;
  words(p, p.f().eval(x), depth - 1, out);
  words(p, p.g().eval(x), depth - 1, out);
}

bool covered(const std::vector<double>& sorted, double x, double eps) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x - eps);
  return it != sorted.end() && *it <= x + eps;
}

Verdict oracles() {
  const auto& ex = fixture::example();
  const auto& p = ex.pair;
  std::mt19937_64 rng(5);
  const Interval f1 = fundamental_domain(p, Which::F, 1);
  std::uniform_real_distribution<double> u(f1.lo, f1.hi);
  int mism = 0, checked = 0;
  while (checked < 1000) {
    const double x = u(rng);
    if (x >= f1.hi) continue;
    ++checked;
    const int n = induced_n(p, Which::F, x);
    const int m = induced_n_oracle(p, x);
    // Points within rounding of a discontinuity may legitimately differ by one.
    if (n != m) ++mism;
  }

  std::vector<double> brute;
  words(p, 0.0, 12, brute);
  std::sort(brute.begin(), brute.end());
  const double eps = p.tol().eps_geom;
  const auto cloud = orbit(p, 0.0, 12);
  std::size_t orbit_miss = 0;
  for (double x : brute) orbit_miss += !cloud.near(x, eps);
  for (double x : cloud.points) orbit_miss += !covered(brute, x, eps);

  // x is in R_f iff some g^{-n}(f^{-1}(x)) lies in H_g, and mirror for R_g.
  const auto& r = ex.regions;
  const auto& h = ex.hole;
  auto member = [&](Which w, double x) {
    const MapSpec& first = p.map(w);
    const MapSpec& other = p.map(w == Which::F ? Which::G : Which::F);
    const Interval& target = w == Which::F ? h.h_g : h.h_f;
    if (x < first.lower() || x > first.upper()) return false;
    double y = first.inverse_eval(x);
    for (int n = 0; n <= r.n_max; ++n) {
      if (target.contains(y)) return true;
      if (y < other.lower() || y > other.upper()) return false;
      y = other.inverse_eval(y);
    }
    return false;
  };
  constexpr int kGrid = 100000;
  int disagree = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = (i + 0.5) / kGrid;
    disagree += member(Which::F, x) != r.r_f.contains(x);
    disagree += member(Which::G, x) != r.r_g.contains(x);
  }
  const double symdiff = static_cast<double>(disagree) / kGrid;
  const bool ok = mism == 0 && orbit_miss == 0 && symdiff < 1e-4;
  return {ok, "induced_n mismatches=" + std::to_string(mism) + "/1000, orbit misses=" +
                  std::to_string(orbit_miss) + fmt(", ruination symdiff=%.1e", symdiff)};
}

// ---------------------------------------------------------------- criterion 6
double near_break(const MapSpec& m, double x) {
  double d = 1.0;
  for (double b : m.breakpoints()) d = std::min(d, std::abs(x - b));
  return d;
}

Verdict numerics() {
  const auto& ex = fixture::example();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<const MapSpec*> maps = {&ex.pair.f(), &ex.pair.g(), &fixture::bump().f0, &fixture::bump().g0,
                                      &fixture::appendix().pair.f(), &fixture::appendix().pair.g()};
  double map_err = 0.0, inv_err = 0.0;
  for (const MapSpec* m : maps) {
    for (int i = 0; i < 1000; ++i) {
      const double x = 0.001 + 0.998 * u(rng);
      const double h = 1e-6;
      if (near_break(*m, x) > 10 * h) {
        const double fd = (m->eval(x + h) - m->eval(x - h)) / (2 * h);
        map_err = std::max(map_err, std::abs(fd - m->deriv(x)) / std::abs(m->deriv(x)));
      }
      const double y = m->lower() + (m->upper() - m->lower()) * u(rng);
      inv_err = std::max(inv_err, std::abs(m->eval(m->inverse_eval(y)) - y));
      inv_err = std::max(inv_err, std::abs(m->inverse_eval(m->eval(x)) - x));
    }
  }

  double ind_err = 0.0;
  for (Which w : {Which::F, Which::G}) {
    const Interval dom = fundamental_domain(ex.pair, w, 1);
    auto disc = discontinuities(ex.pair, w);
    std::uniform_real_distribution<double> d(dom.lo, dom.hi);
    int done = 0;
    while (done < 500) {
      const double x = d(rng);
      const double h = 1e-8;
      double gap = std::min(x - dom.lo, dom.hi - x);
      for (double c : disc) gap = std::min(gap, std::abs(x - c));
      if (gap < 1e-5) continue;
      const auto a = induced(ex.pair, w, x - h);
      const auto b = induced(ex.pair, w, x + h);
      if (a.n != b.n) continue;
      ++done;
      const double fd = (b.value - a.value) / (2 * h);
      const double exact = induced_deriv(ex.pair, w, x);
      ind_err = std::max(ind_err, std::abs(fd - exact) / exact);
    }
  }

  const auto [f0, g0] = base_pair();
  const auto& fam = fixture::family_at_alpha();
  const double sym = std::max({symmetry_residual(f0, g0), symmetry_residual(fixture::bump().f0, fixture::bump().g0),
                               symmetry_residual(fam.f(), fam.g()),
                               symmetry_residual(ex.pair.f(), ex.pair.g()),
                               symmetry_residual(fixture::appendix().pair.f(), fixture::appendix().pair.g())});
  const bool ok = map_err <= 1e-6 && ind_err <= 1e-5 && inv_err <= 1e-9 && sym <= 1e-9;
  return {ok, fmt("map fd rel=%.2e", map_err) + fmt(" induced fd rel=%.2e", ind_err) +
                  fmt(" inverse=%.2e", inv_err) + fmt(" symmetry=%.2e", sym)};
}

// ---------------------------------------------------------------- criterion 7
std::vector<Interval> clipped(const std::vector<IndexedPart>& parts, const Interval& w, bool from_top) {
  std::vector<Interval> out;
  for (const auto& q : parts) {
    const double lo = std::max(q.part.lo, w.lo);
    const double hi = std::min(q.part.hi, w.hi);
    if (lo < hi) out.push_back(Interval{lo, hi});
  }
  std::sort(out.begin(), out.end(), [&](const Interval& a, const Interval& b) {
    return from_top ? a.lo > b.lo : a.lo < b.lo;
  });
  return out;
}

Verdict equivariance() {
  const auto& ex = fixture::example();
  const auto& f0 = fixture::bump().f0;
  const auto alphas = alpha_sequence(f0, ex.params.k, ex.alpha0, 6);
  double worst = 0.0;
  bool ok = true;
  for (const auto& [m, n] : {std::pair{0, 1}, std::pair{1, 3}, std::pair{2, 5}}) {
    const IFSPair pm = epsilon_family(f0, ex.params.k, alphas[m]);
    const IFSPair pn = epsilon_family(f0, ex.params.k, alphas[n]);
    const auto rm = ruination_regions(pm, find_hole(pm, ex.j_p), 200, 1e-15);
    const auto rn = ruination_regions(pn, find_hole(pn, ex.j_p), 200, 1e-15);
    for (bool f_side : {true, false}) {
      const auto a = clipped(f_side ? rm.f_parts : rm.g_parts, pm.overlap(), true);
      const auto b = clipped(f_side ? rn.f_parts : rn.g_parts, pn.overlap(), true);
      if (a.size() < 5 || b.size() < 5) {
        ok = false;
        continue;
      }
      for (int i = 0; i < 5; ++i) {
        const Interval s = phi_rescale(pm.overlap(), pn.overlap(), a[i]);
        worst = std::max(worst, hausdorff_distance(IntervalSet{s}, IntervalSet{b[i]}));
      }
    }
  }
  ok = ok && worst <= 1e-7;
  return {ok, "pairs (0,1) (1,3) (2,5)" + fmt(", max Hausdorff=%.2e", worst)};
}

// ---------------------------------------------------------------- criterion 8
Verdict seeds() {
  constexpr double kRes = 1e-3;
  const auto& ex = fixture::example();
  const auto& ap = fixture::appendix();
  double worst = 0.0;
  for (const IFSPair* p : {&ex.pair, &ap.pair}) {
    const auto a = minimal_set_cover(*p, 16, kRes, 0.0);
    const auto b = minimal_set_cover(*p, 16, kRes, 1.0);
    worst = std::max(worst, hausdorff_distance(a, b));
  }
  return {worst <= 2 * kRes, fmt("resolution 1e-3, max Hausdorff=%.3e", worst)};
}

// ---------------------------------------------------------------- criterion 9
Verdict lemmas() {
  const auto& ex = fixture::example();
  const auto cloud = orbit(ex.pair, 0.0, 18);
  const auto back = check_backward_orbit(ex.pair, cloud, 1000, ex.pair.tol().eps_geom);
  const auto empty = check_overlap_empty(ex.regions, cloud);
  const auto b = boundary_sets(ex.pair, ex.hole, ex.regions);
  const auto near = check_boundary_near(BoundarySets{b.b_f, {}}, minimal_set_cover(ex.pair, 14, 1e-2), 1e-2);
  const bool ok = back.tested == 1000 && back.failed == 0 && empty.failed == 0 && near.failed == 0;
  return {ok, "backward orbit " + std::to_string(back.tested - back.failed) + "/" + std::to_string(back.tested) +
                  ", overlap parts clean " + std::to_string(empty.tested - empty.failed) + "/" +
                  std::to_string(empty.tested) + ", B_f near cover " + std::to_string(near.tested - near.failed) +
                  "/" + std::to_string(near.tested)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"appendix measure bound", appendix_bound},
      {"construction pipeline", construction},
      {"hole invariance and avoidance", hole},
      {"gap certification", gaps},
      {"oracle equivalences", oracles},
      {"numerical consistency", numerics},
      {"phi-equivariance", equivariance},
      {"seed agreement", seeds},
      {"lemma properties", lemmas},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.ok;
    std::printf("%s %zu %s: %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
