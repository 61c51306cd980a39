#include "cantorifs/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cantorifs/error.hpp"

namespace cantorifs {

namespace {

double inner_slope(const ConstructionParams& p) { return std::sqrt(p.bump_strength); }

// Plateau slope that keeps the integral of the bump profile equal to a / 2.
double plateau_slope(double s) { return (0.475 - 0.15 * s) / 0.8; }

// Decreasing function phi on [lo, hi] with phi(lo) >= target >= phi(hi).
double bisect_decreasing(const std::function<double(double)>& phi, double lo, double hi, double target,
                         const char* what) {
  const double vlo = phi(lo);
  const double vhi = phi(hi);
  if (!(vlo >= target && target >= vhi)) {
    throw RangeError(std::string(what) + ": target " + format_real(target) + " outside [" + format_real(vhi) +
                     ", " + format_real(vlo) + "]");
  }
  for (int i = 0; i < 400 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void ConstructionParams::validate() const {
  if (std::abs(p - 1.0 / 3.0) > 1e-15 || std::abs(q - 2.0 / 3.0) > 1e-15) {
    throw DomainError("the construction requires p = 1/3 and q = 2/3");
  }
  if (!(jp_width > 0.0 && jp_width <= 0.01)) throw DomainError("jp_width must lie in (0, 0.01]");
  if (!(k > 0.0 && k < 0.01)) throw DomainError("k must lie in (0, 0.01)");
  if (!(bump_strength > 2.0)) throw DomainError("bump_strength must exceed 2");
  if (!(plateau_slope(std::sqrt(bump_strength)) > 0.0)) {
    throw DomainError("bump_strength too large: the bump profile needs a positive plateau slope");
  }
  if (epsilon_range.hi > 0.0 && !(epsilon_range.lo >= 0.0 && epsilon_range.hi < 1.0)) {
    throw DomainError("epsilon_range must lie in [0, 1)");
  }
  if (n_target < 1) throw DomainError("n_target must be at least 1");
  if (n_search_max < 0) throw DomainError("n_search_max must be non-negative");
  if (ee_grid < 10) throw DomainError("ee_grid must be at least 10");
}

void AppendixParams::validate() const {
  if (!(lambda > 0.0 && lambda < 0.5)) throw DomainError("lambda must lie in (0, 1/2)");
  if (!(eps > 0.0 && eps < 1.0 / 6.0)) throw DomainError("eps must lie in (0, 1/6)");
}

std::pair<MapSpec, MapSpec> base_pair() {
  return {MapSpec::affine(0.5, 0.0, "f*"), MapSpec::affine(0.5, 0.5, "g*")};
}

Bump bump_modify(const ConstructionParams& params) {
  params.validate();
  const double p = params.p;
  const double q = params.q;
  const double a = 0.5 * params.jp_width;
  const double s = inner_slope(params);
  const double c = plateau_slope(s);
  const SlopeKnot knots[] = {{q - a, 0.5},        {q - 0.9 * a, c}, {q - 0.2 * a, c}, {q - 0.1 * a, s},
                             {q + 0.1 * a, s},    {q + 0.2 * a, c}, {q + 0.9 * a, c}, {q + a, 0.5}};
  std::vector<Segment> segs;
  segs.emplace_back(0.0, q - a, Affine{0.5, 0.0});
  for (auto& sg : integrate_slope_profile(knots, 0.5 * (q - a))) segs.push_back(sg);
  segs.emplace_back(q + a, 1.0, Affine{0.5, 0.0});
  MapSpec f0(std::move(segs), "f0");
  MapSpec g0 = symmetry_conjugate(f0);

  Bump b{f0, g0, {p - a, p + a}, {q - a, q + a}, {p - 0.1 * a, p + 0.1 * a}, {q - 0.1 * a, q + 0.1 * a}, c};
  const double need = params.jp_width / 100.0;
  const Interval gjp = b.g0.image(b.j_prime_p);
  const Interval fjq = b.f0.image(b.j_prime_q);
  if (!(gjp.lo < b.j_prime_q.lo - need && b.j_prime_q.hi + need < gjp.hi)) {
    throw HypothesisError("J'_q is not inside g0(J'_p) with margin " + format_real(need));
  }
  if (!(fjq.lo < b.j_prime_p.lo - need && b.j_prime_p.hi + need < fjq.hi)) {
    throw HypothesisError("J'_p is not inside f0(J'_q) with margin " + format_real(need));
  }
  const Interval back{b.f0.eval(b.g0.eval(b.j_p.lo)), b.f0.eval(b.g0.eval(b.j_p.hi))};
  if (!(back.lo > b.j_p.lo + need && back.hi < b.j_p.hi - need)) {
    throw HypothesisError("f0 o g0 does not map J_p into its interior");
  }
  return b;
}

std::pair<MapSpec, MapSpec> epsilon_maps(const MapSpec& f0, double k, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  if (!(k > 0.0 && k < 0.01)) throw DomainError("k must lie in (0, 0.01)");
  const double x1 = 1.0 - 1.5 * k;
  if (std::abs(f0.deriv(x1) - 0.5) > 1e-15 || std::abs(f0.eval(1.0) - 0.5) > 1e-15) {
    throw DomainError("f0 must equal x/2 near 1");
  }
  auto segs = restrict_segments(f0, 0.0, x1);
  const SlopeKnot knots[] = {{x1, 0.5}, {1.0 - 1.25 * k, 0.5 * (1.0 - eps)}, {1.0 - k, 0.5 + eps}};
  for (auto& s : integrate_slope_profile(knots, f0.eval(x1))) segs.push_back(s);
  const double y_corner = segs.back().y_hi();
  segs.emplace_back(1.0 - k, 1.0, Affine{0.5 + eps, y_corner - (0.5 + eps) * (1.0 - k)});
  MapSpec f(std::move(segs), "f_eps");
  MapSpec g = symmetry_conjugate(f);
  return {std::move(f), std::move(g)};
}

IFSPair epsilon_family(const MapSpec& f0, double k, double eps) {
  auto [f, g] = epsilon_maps(f0, k, eps);
  IFSPair p = IFSPair::make(std::move(f), std::move(g));
  const auto so = check_so(p);
  if (!so.ok) throw ValidationError("single overlap fails at eps = " + format_real(eps));
  return p;
}

double return_point(const MapSpec& f0, double k, double eps) {
  const auto [f, g] = epsilon_maps(f0, k, eps);
  return f.inverse_eval(g.eval(0.0));
}

double find_delta(const Bump& bump, const ConstructionParams& params) {
  auto admissible = [&](double eps) {
    try {
      const IFSPair p = epsilon_family(bump.f0, params.k, eps);
      find_hole(p, bump.j_p);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  for (int j = 1; j <= 40; ++j) {
    const double delta = std::ldexp(1.0, -j);
    if (admissible(delta) && admissible(delta / 1024.0)) return delta;
  }
  throw StageError("delta", "no dyadic eps window down to 2^-40 validates");
}

IntervalSet h_prime(const MapSpec& g, const Interval& h_p, int n_max, double min_length) {
  std::vector<Interval> parts;
  Interval cur = h_p;
  for (int n = 0; n <= n_max && cur.length() >= min_length; ++n) {
    parts.push_back(cur);
    cur = g.image(cur);
  }
  return IntervalSet(std::move(parts), 0.0);
}

double find_c_parameter(const MapSpec& f0, const MapSpec& g0, double k, const Interval& h_p, int n,
                        const Interval& eps_window) {
  if (n < 1) throw DomainError("find_c_parameter needs n >= 1");
  Interval target = h_p;
  for (int i = 0; i < n; ++i) target = g0.image(target);
  const double hi = eps_window.hi;
  const double lo = std::max(eps_window.lo, hi * 1e-9);
  if (!(lo < hi)) throw DomainError("empty eps window");
  auto phi = [&](double e) { return return_point(f0, k, e); };
  const double eps = bisect_decreasing(phi, lo, hi, target.mid(), "C-parameter search");
  const double x = phi(eps);
  if (!target.contains_interior(x, target.length() / 10.0)) {
    throw RangeError("C-parameter search landed outside g^n(H_p)");
  }
  return eps;
}

std::vector<double> alpha_sequence(const MapSpec& f0, double k, double alpha0, int count) {
  if (count < 1) throw DomainError("alpha_sequence needs count >= 1");
  const auto maps0 = epsilon_maps(f0, k, alpha0);
  const MapSpec& g_a0 = maps0.second;
  double target = maps0.first.inverse_eval(g_a0.eval(0.0));
  auto phi = [&](double e) { return return_point(f0, k, e); };
  std::vector<double> out;
  for (int n = 0; n < count; ++n) {
    const double a = bisect_decreasing(phi, alpha0 * 1e-12, std::min(0.999, alpha0 * (1.0 + 1e-9)), target,
                                       "alpha sequence");
    out.push_back(a);
    target = g_a0.eval(target);
  }
  return out;
}

double phi_rescale(const Interval& w_from, const Interval& w_to, double x) {
  if (!(w_from.length() > 0.0 && w_to.length() > 0.0)) throw DomainError("phi_rescale needs non-degenerate intervals");
  const double slack = 1e-12 * w_from.length();
  if (x < w_from.lo - slack || x > w_from.hi + slack) throw DomainError("phi_rescale argument outside w_from");
  if (x == w_from.lo) return w_to.lo;
  if (x == w_from.hi) return w_to.hi;
  return w_to.lo + (x - w_from.lo) * (w_to.length() / w_from.length());
}

Interval phi_rescale(const Interval& w_from, const Interval& w_to, const Interval& x) {
  return Interval{phi_rescale(w_from, w_to, x.lo), phi_rescale(w_from, w_to, x.hi)};
}

MapSpec build_gamma(const RuinationRegions& r, const Interval& w) {
  auto t = [&](double x) { return (x - w.lo) / w.length(); };
  const IndexedPart* q_left = nullptr;
  const IndexedPart* p_right = nullptr;
  for (const auto& q : r.f_parts) {
    if (q.part.contains_interior(w.lo)) q_left = &q;
  }
  for (const auto& q : r.g_parts) {
    if (q.part.contains_interior(w.hi)) p_right = &q;
  }
  if (!q_left) throw StageError("gamma", "g(0) is not interior to a part of R_f");
  if (!p_right) throw StageError("gamma", "f(1) is not interior to a part of R_g");
  const IndexedPart* q_next = nullptr;
  for (const auto& q : r.f_parts) {
    if (q.part.lo > q_left->part.hi && q.part.hi < w.hi && (!q_next || q.part.lo < q_next->part.lo)) q_next = &q;
  }
  if (!q_next) throw StageError("gamma", "no part of R_f after the one holding g(0)");

  const double tq = t(q_left->part.hi);
  const double t_l = 0.25 * tq;
  const double y_a = 0.75 * tq;
  const double qn_lo = t(q_next->part.lo);
  const double qn_hi = t(q_next->part.hi);
  const double y_b = qn_lo + 0.25 * (qn_hi - qn_lo);
  const double y_c = qn_hi - 0.25 * (qn_hi - qn_lo);
  const double t_p = t(p_right->part.lo);

  const IndexedPart* src = nullptr;
  for (const auto& q : r.g_parts) {
    if (t(q.part.lo) > t_l && t(q.part.hi) < t_p && (!src || q.part.length() > src->part.length())) src = &q;
  }
  if (!src) throw StageError("gamma", "no part of R_g between the end parts");
  const double s_lo = t(src->part.lo);
  const double s_hi = t(src->part.hi);
  if (!(0.0 < t_l && t_l < s_lo && s_hi < t_p && t_p < 1.0 && t_l < y_a && y_a < y_b && y_b < y_c && y_c < 1.0)) {
    throw StageError("gamma", "ruination parts are not in the expected order");
  }
  const double sigma_s = (y_b - y_a) / (s_hi - s_lo);
  const double sigma_p = (1.0 - y_c) / (1.0 - t_p);

  std::vector<Segment> segs;
  segs.emplace_back(0.0, t_l, Affine{1.0, 0.0});
  for (auto& s : monotone_ramp(t_l, t_l, 1.0, s_lo, y_a, sigma_s)) segs.push_back(s);
  segs.emplace_back(s_lo, s_hi, Affine{sigma_s, y_a - sigma_s * s_lo});
  for (auto& s : monotone_ramp(s_hi, y_b, sigma_s, t_p, y_c, sigma_p)) segs.push_back(s);
  for (auto& s : monotone_ramp(t_p, y_c, sigma_p, 1.0, 1.0, 1.0)) segs.push_back(s);
  return MapSpec(std::move(segs), "gamma");
}

MapSpec castrate(const MapSpec& g, const MapSpec& gamma_unit, const Interval& w_n) {
  const double eps = g.tol().eps_geom;
  if (std::abs(g.eval(0.0) - w_n.lo) > eps) throw StageError("castrate", "g(0) is not the left end of W");
  const Segment& first = g.segments().front();
  const auto* aff = std::get_if<Affine>(&first.kind());
  const double y_w = g.inverse_eval(w_n.hi);
  if (!aff || first.x_hi() < y_w) throw StageError("castrate", "g is not affine on its preimage of W");
  const double len = w_n.length();
  const double tau = aff->slope / len;
  const double x_end = 1.0 / tau;

  std::vector<Segment> segs;
  const auto& gs = gamma_unit.segments();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto& s = gs[i];
    const double x0 = segs.empty() ? 0.0 : segs.back().x_hi();
    const double x1 = i + 1 == gs.size() ? x_end : s.x_hi() / tau;
    if (const auto* a = std::get_if<Affine>(&s.kind())) {
      segs.emplace_back(x0, x1, Affine{len * a->slope * tau, w_n.lo + len * a->intercept});
    } else {
      const auto& c = std::get<CubicHermite>(s.kind());
      segs.emplace_back(x0, x1,
                        CubicHermite{w_n.lo + len * c.y_lo, w_n.lo + len * c.y_hi, aff->slope * c.d_lo,
                                     aff->slope * c.d_hi});
    }
  }
  for (auto& s : restrict_segments(g, x_end, 1.0)) segs.push_back(s);
  try {
    return MapSpec(std::move(segs), "g_castrated", g.tol());
  } catch (const ValidationError& e) {
    throw StageError("castrate", e.what());
  }
}

ClassCExample build_class_c_example(const ConstructionParams& params) {
  try {
    params.validate();
  } catch (const Error& e) {
    throw StageError("params", e.what());
  }
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(name, e.what());
    }
  };
  const Bump bump = stage("bump", [&] { return bump_modify(params); });
  const double delta =
      params.epsilon_range.hi > 0.0 ? params.epsilon_range.hi : stage("delta", [&] { return find_delta(bump, params); });
  const Interval window{params.epsilon_range.hi > 0.0 ? params.epsilon_range.lo : 0.0, delta};
  const Interval h_p = stage("hole", [&] {
    return find_hole(epsilon_family(bump.f0, params.k, 0.5 * delta), bump.j_p).h_f;
  });
  const double alpha0 = stage("c-search", [&] {
    return find_c_parameter(bump.f0, bump.g0, params.k, h_p, params.n_target, window);
  });
  const MapSpec gamma = stage("gamma", [&] {
    const IFSPair p0 = epsilon_family(bump.f0, params.k, alpha0);
    const HolePair h0 = find_hole(p0, bump.j_p);
    return build_gamma(ruination_regions(p0, h0), p0.overlap());
  });
  const auto alphas = stage("alpha", [&] {
    return alpha_sequence(bump.f0, params.k, alpha0, params.n_search_max + 1);
  });

  std::string last_failure;
  for (int n = 0; n <= params.n_search_max; ++n) {
    const double alpha = alphas[n];
    const IFSPair pn = stage("castrate", [&] {
      const IFSPair base = epsilon_family(bump.f0, params.k, alpha);
      return IFSPair::make(base.f(), castrate(base.g(), gamma, base.overlap()));
    });
    const HolePair hole = stage("hole", [&] { return find_hole(pn, bump.j_p); });
    const SoReport so = check_so(pn);
    const HoReport ho = validate_hole(pn, hole);
    RuinationRegions regions = ruination_regions(pn, hole);
    const CaReport ca = check_ca(pn, regions);
    const ExpansionReport ee = check_ee(pn, hole, 1.0, params.ee_grid);
    if (so.ok && ho.ok && ca.ok && ee.passed) {
      return ClassCExample{pn, hole, std::move(regions), so, ho, ee, ca, delta, alpha0, alpha, n, gamma,
                           bump.j_p, params};
    }
    last_failure = "n = " + std::to_string(n) + ": So " + (so.ok ? "ok" : "fails") + ", Ho " +
                   (ho.ok ? "ok" : "fails") + ", Ca " + (ca.ok ? "ok" : "fails") + ", Ee mu = " + format_real(ee.mu);
  }
  throw StageError("ee-search", "no alpha index up to " + std::to_string(params.n_search_max) +
                                    " passes all checks (" + last_failure + ")");
}

AppendixPair appendix_pair(const AppendixParams& params) {
  try {
    params.validate();
  } catch (const Error& e) {
    throw StageError("appendix", e.what());
  }
  const double e = params.eps;
  const double s = 0.9 * params.lambda;
  const Interval im1{0.0, 1.0 / 3.0 - e};
  const Interval i0{1.0 / 3.0 + e, 2.0 / 3.0 - e};
  const Interval i1{2.0 / 3.0 + e, 1.0};
  const double slack = im1.hi - s * im1.hi - s * i0.length();
  if (!(slack > 0.0)) throw StageError("appendix", "f(I_0) does not fit inside I_-1");
  const double lo0 = s * im1.hi + 0.5 * slack;
  const double hi0 = lo0 + s * i0.length();
  const double f1_min = std::max(0.5, i0.lo + s * i1.length());
  if (!(f1_min < i0.hi)) throw StageError("appendix", "f(I_1) does not fit inside I_0");
  const double f1 = 0.5 * (f1_min + i0.hi);
  const double lo1 = f1 - s * i1.length();

  std::vector<Segment> segs;
  try {
    segs.emplace_back(0.0, im1.hi, Affine{s, 0.0});
    for (auto& sg : monotone_ramp(im1.hi, s * im1.hi, s, i0.lo, lo0, s)) segs.push_back(sg);
    segs.emplace_back(i0.lo, i0.hi, Affine{s, lo0 - s * i0.lo});
    for (auto& sg : monotone_ramp(i0.hi, hi0, s, i1.lo, lo1, s)) segs.push_back(sg);
    segs.emplace_back(i1.lo, 1.0, Affine{s, lo1 - s * i1.lo});
    MapSpec f(std::move(segs), "f_appendix");
    MapSpec g = symmetry_conjugate(f);
    AppendixPair ap{IFSPair::make(std::move(f), std::move(g)), im1, i0, i1, params};

    const double m = ap.pair.tol().eps_geom;
    const auto& pf = ap.pair.f();
    const auto& pg = ap.pair.g();
    const bool ok = im1.contains(pf.image(im1)) && im1.contains_interior(pf.eval(i0.lo), m) &&
                    im1.contains_interior(pf.eval(i0.hi), m) && i0.contains_interior(pf.eval(i1.lo), m) &&
                    i0.contains_interior(pf.eval(i1.hi), m) && i1.contains(pg.image(i1)) &&
                    i1.contains_interior(pg.eval(i0.lo), m) && i1.contains_interior(pg.eval(i0.hi), m) &&
                    i0.contains_interior(pg.eval(im1.lo), m) && i0.contains_interior(pg.eval(im1.hi), m);
    if (!ok) throw StageError("appendix", "inclusion property fails");
    return ap;
  } catch (const StageError&) {
    throw;
  } catch (const Error& err) {
    throw StageError("appendix", err.what());
  }
}

std::vector<IntervalSet> lambda_sequence(const AppendixPair& ap, int n) {
  if (n < 0) throw DomainError("lambda_sets needs n >= 0");
  std::vector<IntervalSet> out;
  out.emplace_back(std::vector<Interval>{ap.i_m1, ap.i_0, ap.i_1}, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& prev = out.back();
    std::vector<Interval> parts;
    parts.reserve(2 * prev.size());
    for (const auto& q : prev.parts()) {
      parts.push_back(ap.pair.f().image(q));
      parts.push_back(ap.pair.g().image(q));
    }
    IntervalSet next(std::move(parts), 0.0);
    // Nestedness: every part of the new set lies in one part of the old one.
    std::size_t j = 0;
    for (const auto& q : next.parts()) {
      while (j < prev.size() && prev.parts()[j].hi < q.lo) ++j;
      if (j == prev.size() || !(prev.parts()[j].lo <= q.lo + 1e-15 && q.hi <= prev.parts()[j].hi + 1e-15)) {
        throw ValidationError("Lambda_" + std::to_string(i + 1) + " is not nested in Lambda_" + std::to_string(i));
      }
    }
    out.push_back(std::move(next));
  }
  return out;
}

IntervalSet lambda_sets(const AppendixPair& ap, int n) { return lambda_sequence(ap, n).back(); }

MeasureBoundReport check_measure_bound(const AppendixPair& ap, int n_max) {
  MeasureBoundReport rep;
  const auto seq = lambda_sequence(ap, n_max);
  const double rate = 2.0 * ap.params.lambda;
  rep.ok = true;
  for (int n = 0; n <= n_max; ++n) {
    rep.measures.push_back(measure(seq[n]));
    rep.bounds.push_back(std::pow(rate, n));
    if (rep.measures.back() > rep.bounds.back()) rep.ok = false;
    if (n > 0) {
      rep.ratios.push_back(rep.measures[n] / rep.measures[n - 1]);
      if (rep.ratios.back() > rate) rep.ok = false;
    }
  }
  return rep;
}

}  // namespace cantorifs
