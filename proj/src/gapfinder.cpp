#include "cantorifs/gapfinder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "cantorifs/error.hpp"

namespace cantorifs {

namespace {

constexpr double kFixedPointReach = 1e-13;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt(const Interval& j) { return "[" + fmt(j.lo) + ", " + fmt(j.hi) + "]"; }

Which other_of(Which w) { return w == Which::F ? Which::G : Which::F; }

bool part_holding(const IntervalSet& s, const Interval& j) {
  const auto i = s.find(j.mid());
  return i && s.parts()[*i].contains(j);
}

}  // namespace

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::BOUNDARY_HIT: return "BOUNDARY_HIT";
    case CaseTag::IN_HF: return "IN_HF";
    case CaseTag::IN_HG: return "IN_HG";
    case CaseTag::IN_W_RF: return "IN_W_RF";
    case CaseTag::IN_W_RG: return "IN_W_RG";
    case CaseTag::IN_W_OVERLAP: return "IN_W_OVERLAP";
    case CaseTag::IN_F1_FREE: return "IN_F1_FREE";
    case CaseTag::IN_G1_FREE: return "IN_G1_FREE";
    case CaseTag::PULLBACK_FN: return "PULLBACK_FN";
  }
  return "?";
}

std::string to_string(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::HOLE: return "HOLE";
    case TerminalReason::RUINATION_OVERLAP: return "RUINATION_OVERLAP";
    case TerminalReason::BOUNDARY_LEMMA: return "BOUNDARY_LEMMA";
  }
  return "?";
}

double apply_step(const IFSPair& p, const TraceStep& s, double x) {
  const MapSpec& first = p.map(s.first);
  const MapSpec& other = p.map(other_of(s.first));
  for (int i = 0; i < s.first_count; ++i) x = first.inverse_eval(x);
  for (int i = 0; i < s.other_count; ++i) x = other.inverse_eval(x);
  return x;
}

double undo_step(const IFSPair& p, const TraceStep& s, double y) {
  const MapSpec& first = p.map(s.first);
  const MapSpec& other = p.map(other_of(s.first));
  for (int i = 0; i < s.other_count; ++i) y = other.eval(y);
  for (int i = 0; i < s.first_count; ++i) y = first.eval(y);
  return y;
}

Interval replay(const IFSPair& p, const GapCertificate& c) {
  Interval j = c.output;
  for (const auto& s : c.trace) j = Interval{apply_step(p, s, j.lo), apply_step(p, s, j.hi)};
  return j;
}

GapFinder::GapFinder(IFSPair p, HolePair h, RuinationRegions r, BoundarySets b, double mu)
    : p_(std::move(p)), h_(h), r_(std::move(r)), b_(std::move(b)), both_(ruination_overlap(r_)), mu_(mu) {
  if (!(mu_ > 0.0)) mu_ = check_ee(p_, h_, 1.0, 2000).mu;
  if (!(mu_ > 1.0)) throw HypothesisError("expansion constant " + fmt(mu_) + " is not above 1");
  f1_ = fundamental_domain(p_, Which::F, 1);
  g1_ = fundamental_domain(p_, Which::G, 1);

  for (double x = 1.0; x > kFixedPointReach && f_orbit_one_.size() < 100000; x = p_.f().eval(x)) {
    f_orbit_one_.push_back(x);
  }
  for (double x = 0.0; 1.0 - x > kFixedPointReach && g_orbit_zero_.size() < 100000; x = p_.g().eval(x)) {
    g_orbit_zero_.push_back(x);
  }
  region_cuts_ = b_.b_f;
  region_cuts_.insert(region_cuts_.end(), b_.b_g.begin(), b_.b_g.end());
  region_cuts_.insert(region_cuts_.end(), f_orbit_one_.begin(), f_orbit_one_.end());
  region_cuts_.insert(region_cuts_.end(), g_orbit_zero_.begin(), g_orbit_zero_.end());
  std::sort(region_cuts_.begin(), region_cuts_.end());
  region_cuts_.erase(std::unique(region_cuts_.begin(), region_cuts_.end()), region_cuts_.end());
  disc_f_ = discontinuities(p_, Which::F);
  disc_g_ = discontinuities(p_, Which::G);
  std::sort(disc_f_.begin(), disc_f_.end());
  std::sort(disc_g_.begin(), disc_g_.end());
}

GapFinder::GapFinder(IFSPair p, HolePair h, double mu)
    : GapFinder(p, h, ruination_regions(p, h), boundary_sets(p, h, ruination_regions(p, h)), mu) {}

int GapFinder::iteration_bound(double length) const {
  const double ratio = f1_.length() / length;
  const int base = ratio > 1.0 ? static_cast<int>(std::ceil(std::log(ratio) / std::log(mu_))) : 0;
  return base + 50;
}

std::vector<double> GapFinder::cuts_in(const std::vector<double>& sorted, const Interval& j) const {
  auto lo = std::upper_bound(sorted.begin(), sorted.end(), j.lo);
  auto hi = std::lower_bound(sorted.begin(), sorted.end(), j.hi);
  return lo < hi ? std::vector<double>(lo, hi) : std::vector<double>{};
}

CaseTag GapFinder::region_of(const Interval& j) const {
  if (h_.h_f.contains(j)) return CaseTag::IN_HF;
  if (h_.h_g.contains(j)) return CaseTag::IN_HG;
  const Interval& w = p_.overlap();
  if (w.contains(j)) {
    if (part_holding(both_, j)) return CaseTag::IN_W_OVERLAP;
    if (part_holding(r_.r_g, j)) return CaseTag::IN_W_RG;
    if (part_holding(r_.r_f, j)) return CaseTag::IN_W_RF;
    throw ClassificationError("interval " + fmt(j) + " of W lies in neither ruination region");
  }
  if (f1_.contains(j)) return CaseTag::IN_F1_FREE;
  if (g1_.contains(j)) return CaseTag::IN_G1_FREE;
  if (j.hi <= f1_.lo || j.lo >= g1_.hi) return CaseTag::PULLBACK_FN;
  throw ClassificationError("interval " + fmt(j) + " straddles a case boundary");
}

CaseTag GapFinder::classify(const Interval& j) const {
  if (!(j.length() > 0.0)) throw DomainError("classify requires positive length");
  for (const auto* v : {&b_.b_f, &b_.b_g}) {
    auto it = std::lower_bound(v->begin(), v->end(), j.lo);
    if (it != v->end() && *it <= j.hi) return CaseTag::BOUNDARY_HIT;
  }
  if (j.hi <= f1_.lo || j.lo >= g1_.hi) return CaseTag::PULLBACK_FN;
  return region_of(j);
}

std::vector<GapFinder::Piece> GapFinder::pieces(const Interval& j) const {
  std::vector<Piece> out;
  auto split = [](const Interval& k, const std::vector<double>& cuts) {
    std::vector<Interval> parts;
    double lo = k.lo;
    for (double c : cuts) {
      if (c > lo) parts.push_back(Interval{lo, c});
      lo = c;
    }
    if (k.hi > lo) parts.push_back(Interval{lo, k.hi});
    return parts;
  };
  for (const auto& k : split(j, cuts_in(region_cuts_, j))) {
    CaseTag tag;
    try {
      tag = region_of(k);
    } catch (const ClassificationError&) {
      continue;
    }
    switch (tag) {
      case CaseTag::IN_HF:
      case CaseTag::IN_HG:
      case CaseTag::IN_W_OVERLAP:
        out.push_back(Piece{k, tag, true});
        break;
      case CaseTag::IN_W_RG:
      case CaseTag::IN_F1_FREE:
        for (const auto& q : split(k, cuts_in(disc_f_, k))) out.push_back(Piece{q, tag, false});
        break;
      case CaseTag::IN_W_RF:
      case CaseTag::IN_G1_FREE:
        for (const auto& q : split(k, cuts_in(disc_g_, k))) out.push_back(Piece{q, tag, false});
        break;
      case CaseTag::PULLBACK_FN: {
        // Locatable only above the last computed f^k(1) or below the last g^k(0).
        if (k.hi <= f1_.lo && k.lo < f_orbit_one_.back()) break;
        if (k.lo >= g1_.hi && k.hi > g_orbit_zero_.back()) break;
        out.push_back(Piece{k, tag, false});
        break;
      }
      default:
        break;
    }
  }
  return out;
}

TraceStep GapFinder::action(const Piece& piece) const {
  TraceStep s;
  s.tag = piece.tag;
  s.source = piece.j;
  const double m = piece.j.mid();
  switch (piece.tag) {
    case CaseTag::IN_W_RG:
    case CaseTag::IN_F1_FREE:
      s.map = "F";
      s.first = Which::F;
      s.first_count = 1;
      s.other_count = induced_n(p_, Which::F, m);
      break;
    case CaseTag::IN_W_RF:
    case CaseTag::IN_G1_FREE:
      s.map = "G";
      s.first = Which::G;
      s.first_count = 1;
      s.other_count = induced_n(p_, Which::G, m);
      break;
    case CaseTag::PULLBACK_FN: {
      if (m < f1_.lo) {
        // F_N = [f^{N+1}(1), f^N(1)]; f_orbit_one_[N] = f^N(1).
        const auto it = std::lower_bound(f_orbit_one_.begin(), f_orbit_one_.end(), m, std::greater<double>());
        const int n = static_cast<int>(it - f_orbit_one_.begin()) - 1;
        s.map = "f^-" + std::to_string(n - 1);
        s.first = Which::F;
        s.first_count = n - 1;
      } else {
        const auto it = std::lower_bound(g_orbit_zero_.begin(), g_orbit_zero_.end(), m);
        const int n = static_cast<int>(it - g_orbit_zero_.begin()) - 1;
        s.map = "g^-" + std::to_string(n - 1);
        s.first = Which::G;
        s.first_count = n - 1;
      }
      break;
    }
    default:
      throw ClassificationError("no action for " + to_string(piece.tag));
  }
  s.image = Interval{apply_step(p_, s, piece.j.lo), apply_step(p_, s, piece.j.hi)};
  return s;
}

bool GapFinder::strictly_inside(const Piece& piece) const {
  auto in = [&](const Interval& k) { return k.lo < piece.j.lo && piece.j.hi < k.hi; };
  switch (piece.tag) {
    case CaseTag::IN_HF: return in(h_.h_f);
    case CaseTag::IN_HG: return in(h_.h_g);
    case CaseTag::IN_W_OVERLAP: {
      const auto i = both_.find(piece.j.mid());
      return i && in(both_.parts()[*i]);
    }
    default: return false;
  }
}

GapCertificate GapFinder::run(const Interval& j, bool require_core) const {
  if (!(j.lo >= 0.0 && j.hi <= 1.0 && j.length() > 0.0)) {
    throw DomainError("gap search needs a positive-length interval inside [0, 1], got " + fmt(j));
  }
  if (require_core && (j.hi < f1_.lo || j.lo > g1_.hi)) {
    throw DomainError("interval " + fmt(j) + " misses F_1 u G_1");
  }
  GapCertificate c;
  c.input = j;
  Interval cur = j;
  const int bound = iteration_bound(j.length());
  int steps = 0;
  bool boundary = false;
  while (true) {
    const auto ps = pieces(cur);
    if (ps.empty()) throw ClassificationError("no classifiable piece in " + fmt(cur) + "\n" + describe(c));
    const Piece* term = nullptr;
    const Piece* act = nullptr;
    for (const auto& q : ps) {
      const Piece*& slot = q.terminal ? term : act;
      if (!slot || q.j.length() > slot->j.length()) slot = &q;
    }
    const bool stop = term != nullptr;
    const Piece& pick = stop ? *term : *act;
    if (!(pick.j == cur)) {
      const bool hit = classify(cur) == CaseTag::BOUNDARY_HIT;
      boundary = hit;
      c.trace.push_back(TraceStep{hit ? CaseTag::BOUNDARY_HIT : pick.tag, "restrict", Which::F, 0, 0, cur, pick.j});
    } else {
      boundary = false;
    }
    if (stop) {
      // An input already inside the open terminal region is its own witness.
      const bool whole = c.trace.empty() && pick.j == cur && strictly_inside(pick);
      const Interval u = whole ? cur : pick.j.middle_third();
      c.trace.push_back(TraceStep{pick.tag, "stop", Which::F, 0, 0, pick.j, u});
      c.terminal_reason = boundary ? TerminalReason::BOUNDARY_LEMMA
                          : pick.tag == CaseTag::IN_W_OVERLAP ? TerminalReason::RUINATION_OVERLAP
                                                              : TerminalReason::HOLE;
      Interval l = u;
      for (auto it = c.trace.rbegin(); it != c.trace.rend(); ++it) {
        l = Interval{undo_step(p_, *it, l.lo), undo_step(p_, *it, l.hi)};
      }
      if (!(l.length() > 0.0) || !j.contains(l)) {
        throw RangeError("pulled-back output " + fmt(l) + " is not a positive sub-interval of " + fmt(j));
      }
      c.output = l;
      return c;
    }
    if (++steps > bound) {
      throw ResourceError("gap search exceeded " + std::to_string(bound) + " steps\n" + describe(c));
    }
    c.trace.push_back(action(pick));
    cur = c.trace.back().image;
  }
}

GapCertificate GapFinder::find_gap_core(const Interval& j) const { return run(j, true); }

GapCertificate GapFinder::find_gap(const Interval& j) const {
  if (j.hi <= f_orbit_one_.back() || j.lo >= g_orbit_zero_.back()) {
    throw DomainError("interval " + fmt(j) + " is too close to a fixed point to locate its fundamental domain");
  }
  return run(j, false);
}

bool GapFinder::verify(GapCertificate& c, const OrbitCloud& cloud) {
  c.orbit_hits = cloud.count_inside(c.output);
  return *c.orbit_hits == 0;
}

namespace {

GapFinder make_finder(const IFSPair& p, const HolePair& h, const RuinationRegions& r, const BoundarySets& b) {
  return GapFinder(p, h, r, b);
}

GapCertificate checked(const GapFinder& gf, GapCertificate c) {
  static constexpr int kVerificationDepth = 18;
  const OrbitCloud cloud = orbit(gf.pair(), 0.0, kVerificationDepth);
  if (!GapFinder::verify(c, cloud)) {
    throw ValidationError(std::to_string(*c.orbit_hits) + " orbit points inside the output\n" + describe(c));
  }
  return c;
}

}  // namespace

CaseTag classify(const Interval& j, const IFSPair& p, const HolePair& h, const RuinationRegions& r,
                 const BoundarySets& b) {
  return make_finder(p, h, r, b).classify(j);
}

GapCertificate find_gap_core(const Interval& j, const IFSPair& p, const HolePair& h, const RuinationRegions& r,
                             const BoundarySets& b) {
  const GapFinder gf = make_finder(p, h, r, b);
  return checked(gf, gf.find_gap_core(j));
}

GapCertificate find_gap(const Interval& j, const IFSPair& p, const HolePair& h, const RuinationRegions& r,
                        const BoundarySets& b) {
  const GapFinder gf = make_finder(p, h, r, b);
  return checked(gf, gf.find_gap(j));
}

CertificationReport certify_cantor(const GapFinder& finder, double resolution, int depth, int verification_depth,
                                   unsigned workers) {
  if (!(resolution > 0.0 && resolution <= 0.5)) throw DomainError("resolution must lie in (0, 1/2]");
  CertificationReport rep;
  rep.resolution = resolution;
  rep.depth = depth;
  rep.verification_depth = verification_depth;
  const IntervalSet cover = minimal_set_cover(finder.pair(), depth, resolution);
  const OrbitCloud cloud = orbit(finder.pair(), 0.0, verification_depth);

  const auto n = static_cast<std::size_t>(std::ceil(1.0 / resolution - 1e-9));
  rep.grid_total = n;
  std::vector<Interval> grid;
  for (std::size_t i = 0; i < n; ++i) {
    const Interval j{static_cast<double>(i) * resolution, std::min(1.0, static_cast<double>(i + 1) * resolution)};
    if (intersect(IntervalSet{j}, cover).empty()) {
      ++rep.skipped;
    } else {
      grid.push_back(j);
    }
  }

  struct Slot {
    std::optional<GapCertificate> cert;
    std::string error;
  };
  std::vector<Slot> slots(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        GapCertificate c = finder.find_gap(grid[i]);
        if (GapFinder::verify(c, cloud)) {
          slots[i].cert = std::move(c);
        } else {
          slots[i].error = std::to_string(*c.orbit_hits) + " orbit points inside output " + fmt(c.output);
        }
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(grid.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  double sum = 0.0;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (slots[i].cert) {
      const double len = slots[i].cert->output.length();
      rep.min_gap = std::min(rep.min_gap, len);
      rep.max_gap = std::max(rep.max_gap, len);
      rep.max_trace = std::max(rep.max_trace, slots[i].cert->trace.size());
      sum += len;
      rep.certificates.push_back(std::move(*slots[i].cert));
    } else {
      rep.failures.push_back(CertificationFailure{grid[i], slots[i].error});
    }
  }
  if (rep.certificates.empty()) {
    rep.min_gap = 0.0;
  } else {
    rep.mean_gap = sum / static_cast<double>(rep.certificates.size());
  }
  return rep;
}

std::string to_csv(const CertificationReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "lo,hi,status,output_lo,output_hi,steps,terminal,detail\n";
  std::vector<std::pair<Interval, std::string>> rows;
  for (const auto& c : report.certificates) {
    std::ostringstream r;
    r.precision(17);
    r << c.input.lo << ',' << c.input.hi << ",certified," << c.output.lo << ',' << c.output.hi << ','
      << c.trace.size() << ',' << to_string(c.terminal_reason) << ',';
    rows.emplace_back(c.input, r.str());
  }
  for (const auto& f : report.failures) {
    std::string detail = f.reason.substr(0, f.reason.find('\n'));
    std::replace(detail.begin(), detail.end(), ',', ';');
    std::ostringstream r;
    r.precision(17);
    r << f.input.lo << ',' << f.input.hi << ",failed,,,,," << detail;
    rows.emplace_back(f.input, r.str());
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  for (const auto& r : rows) os << r.second << '\n';
  return os.str();
}

std::string describe(const GapCertificate& c) {
  std::ostringstream os;
  os << "input " << fmt(c.input) << '\n';
  for (std::size_t i = 0; i < c.trace.size(); ++i) {
    const auto& s = c.trace[i];
    os << "  " << i << ' ' << to_string(s.tag) << ' ' << s.map;
    if (s.map == "F" || s.map == "G") os << " n=" << s.other_count;
    os << ' ' << fmt(s.source) << " -> " << fmt(s.image) << '\n';
  }
  if (c.output.length() > 0.0) {
    os << "output " << fmt(c.output) << " terminal " << to_string(c.terminal_reason);
    if (c.orbit_hits) os << " orbit_hits " << *c.orbit_hits;
    os << '\n';
  }
  return os.str();
}

HoleDisjointReport verify_hole_disjoint(const IFSPair& p, const HolePair& h, int depth) {
  HoleDisjointReport rep;
  const OrbitCloud cloud = orbit(p, 0.0, depth);
  rep.points = cloud.points.size();
  rep.violations = count_hole_violations(cloud, h, p.tol().eps_geom);
  rep.ok = rep.violations == 0;
  return rep;
}

ComplementReport certify_by_complement(const IFSPair& p, const std::vector<IntervalSet>& lambdas,
                                       double resolution, int depth) {
  if (!(resolution > 0.0 && resolution <= 0.5)) throw DomainError("resolution must lie in (0, 1/2]");
  ComplementReport rep;
  const IntervalSet cover = cover_of(orbit(p, 0.0, depth), resolution);
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / resolution - 1e-9));
  for (std::size_t i = 0; i < n; ++i) {
    const Interval j{static_cast<double>(i) * resolution, std::min(1.0, static_cast<double>(i + 1) * resolution)};
    if (intersect(IntervalSet{j}, cover).empty()) {
      ++rep.skipped;
      continue;
    }
    ++rep.attempted;
    int found = -1;
    for (std::size_t d = 0; d < lambdas.size() && found < 0; ++d) {
      const IntervalSet free = intersect(IntervalSet{j}, lambdas[d].complement());
      for (const auto& gap : free.parts()) {
        if (gap.length() > 0.0) {
          found = static_cast<int>(d);
          break;
        }
      }
    }
    rep.levels.push_back(found);
    if (found < 0) rep.failures.push_back(j);
  }
  return rep;
}

LemmaCount check_backward_orbit(const IFSPair& p, const OrbitCloud& cloud, std::size_t samples, double slack) {
  const Interval& w = p.overlap();
  const Interval f1 = fundamental_domain(p, Which::F, 1);
  const Interval g1 = fundamental_domain(p, Which::G, 1);
  std::vector<std::pair<double, Which>> sites;
  for (double x : cloud.points) {
    if (f1.contains(x) && x < w.lo) sites.emplace_back(x, Which::F);
    if (g1.contains(x) && x > w.hi) sites.emplace_back(x, Which::G);
  }
  LemmaCount out;
  if (sites.empty() || samples == 0) return out;
  const std::size_t stride = std::max<std::size_t>(1, sites.size() / samples);
  for (std::size_t i = 0; i < sites.size() && out.tested < samples; i += stride) {
    ++out.tested;
    if (!cloud.near(induced_map(p, sites[i].second, sites[i].first), slack)) ++out.failed;
  }
  return out;
}

LemmaCount check_overlap_empty(const RuinationRegions& r, const OrbitCloud& cloud) {
  LemmaCount out;
  const IntervalSet both = ruination_overlap(r);
  for (const auto& part : both.parts()) {
    ++out.tested;
    if (cloud.count_inside(part) > 0) ++out.failed;
  }
  return out;
}

LemmaCount check_boundary_near(const BoundarySets& b, const IntervalSet& cover, double resolution) {
  LemmaCount out;
  for (const auto* v : {&b.b_f, &b.b_g}) {
    for (double x : *v) {
      ++out.tested;
      if (cover.distance(x) > resolution) ++out.failed;
    }
  }
  return out;
}

}  // namespace cantorifs
