#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cantorifs/axioms.hpp"
#include "cantorifs/ifs.hpp"

namespace cantorifs {

enum class CaseTag {
  BOUNDARY_HIT,
  IN_HF,
  IN_HG,
  IN_W_RF,
  IN_W_RG,
  IN_W_OVERLAP,
  IN_F1_FREE,
  IN_G1_FREE,
  PULLBACK_FN,
};

enum class TerminalReason { HOLE, RUINATION_OVERLAP, BOUNDARY_LEMMA };

std::string to_string(CaseTag tag);
std::string to_string(TerminalReason reason);

/// One step of the induction. The step sends `source` to `image` through
/// other^{-other_count} o first^{-first_count}, where other is the map that
/// is not `first`. A restriction has both counts zero.
struct TraceStep {
  CaseTag tag = CaseTag::BOUNDARY_HIT;
  std::string map;  ///< "F", "G", "f^-k", "g^-k", "restrict" or "stop"
  Which first = Which::F;
  int first_count = 0;
  int other_count = 0;
  Interval source;
  Interval image;
};

struct GapCertificate {
  Interval input;
  Interval output;
  std::vector<TraceStep> trace;
  TerminalReason terminal_reason = TerminalReason::HOLE;
  /// Orbit points strictly inside `output`; only meaningful when verified.
  std::optional<std::size_t> orbit_hits;
};

/// Applies the step's word of inverse maps.
double apply_step(const IFSPair& p, const TraceStep& s, double x);
/// Undoes the step with forward maps.
double undo_step(const IFSPair& p, const TraceStep& s, double y);
/// Image of the output under every step of the trace.
Interval replay(const IFSPair& p, const GapCertificate& c);

/// Precomputed data of the induction for one pair. Methods are const and
/// thread-safe.
class GapFinder {
 public:
  /// mu <= 0 estimates the expansion constant with check_ee on a coarse grid.
  GapFinder(IFSPair p, HolePair h, RuinationRegions r, BoundarySets b, double mu = 0.0);
  /// Derives regions and boundary sets from the hole.
  GapFinder(IFSPair p, HolePair h, double mu = 0.0);

  const IFSPair& pair() const noexcept { return p_; }
  const HolePair& hole() const noexcept { return h_; }
  const RuinationRegions& regions() const noexcept { return r_; }
  const IntervalSet& overlap() const noexcept { return both_; }
  double mu() const noexcept { return mu_; }

  /// Case of J as a whole. Throws ClassificationError when none applies.
  CaseTag classify(const Interval& j) const;

  /// Iteration bound for an input of length |J|.
  int iteration_bound(double length) const;

  /// Requires J to meet F_1 u G_1. Throws ResourceError past the iteration
  /// bound, ClassificationError when no piece of J can be classified.
  GapCertificate find_gap_core(const Interval& j) const;
  /// Any J inside [0, 1]; pieces of F_N and G_N are pulled back first.
  GapCertificate find_gap(const Interval& j) const;

  /// Sets orbit_hits from the cloud; true when it is zero.
  static bool verify(GapCertificate& c, const OrbitCloud& cloud);

 private:
  struct Piece {
    Interval j;
    CaseTag tag;
    bool terminal = false;
  };
  std::vector<Piece> pieces(const Interval& j) const;
  CaseTag region_of(const Interval& j) const;
  std::vector<double> cuts_in(const std::vector<double>& sorted, const Interval& j) const;
  TraceStep action(const Piece& piece) const;
  bool strictly_inside(const Piece& piece) const;
  GapCertificate run(const Interval& j, bool require_core) const;

  IFSPair p_;
  HolePair h_;
  RuinationRegions r_;
  BoundarySets b_;
  IntervalSet both_;
  double mu_;
  Interval f1_;
  Interval g1_;
  std::vector<double> region_cuts_;  ///< B, f^k(1), g^k(0)
  std::vector<double> disc_f_;
  std::vector<double> disc_g_;
  std::vector<double> f_orbit_one_;   ///< f^k(1), k = 0, 1, ... decreasing
  std::vector<double> g_orbit_zero_;  ///< g^k(0), increasing
};

CaseTag classify(const Interval& j, const IFSPair& p, const HolePair& h, const RuinationRegions& r,
                 const BoundarySets& b);
GapCertificate find_gap_core(const Interval& j, const IFSPair& p, const HolePair& h, const RuinationRegions& r,
                             const BoundarySets& b);
GapCertificate find_gap(const Interval& j, const IFSPair& p, const HolePair& h, const RuinationRegions& r,
                        const BoundarySets& b);

struct CertificationFailure {
  Interval input;
  std::string reason;
};

struct CertificationReport {
  double resolution = 0.0;
  int depth = 0;
  int verification_depth = 0;
  std::size_t grid_total = 0;
  std::size_t skipped = 0;  ///< grid intervals missing the cover
  std::vector<GapCertificate> certificates;
  std::vector<CertificationFailure> failures;
  double min_gap = 0.0;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  std::size_t max_trace = 0;

  std::size_t attempted() const noexcept { return certificates.size() + failures.size(); }
  bool all_certified() const noexcept { return failures.empty() && !certificates.empty(); }
};

/// Runs find_gap on every grid interval meeting minimal_set_cover(depth) and
/// checks each output against orbit(0, verification_depth). Per-interval
/// errors are collected. workers = 0 uses the hardware concurrency.
CertificationReport certify_cantor(const GapFinder& finder, double resolution, int depth,
                                   int verification_depth = 18, unsigned workers = 0);

/// CSV with one row per grid interval attempted.
std::string to_csv(const CertificationReport& report);
/// Human-readable trace.
std::string describe(const GapCertificate& c);

struct LemmaCount {
  std::size_t tested = 0;
  std::size_t failed = 0;
};

/// Up to `samples` cloud points x in F_1 \ W (and mirror points in G_1 \ W),
/// spread evenly: the induced image of x must be within `slack` of the cloud.
LemmaCount check_backward_orbit(const IFSPair& p, const OrbitCloud& cloud, std::size_t samples, double slack);
/// Parts of R_f n R_g holding cloud points strictly inside.
LemmaCount check_overlap_empty(const RuinationRegions& r, const OrbitCloud& cloud);
/// Boundary points farther than `resolution` from the cover.
LemmaCount check_boundary_near(const BoundarySets& b, const IntervalSet& cover, double resolution);

struct HoleDisjointReport {
  bool ok = false;
  std::size_t violations = 0;
  std::size_t points = 0;
};
HoleDisjointReport verify_hole_disjoint(const IFSPair& p, const HolePair& h, int depth);

/// Complement method for a nested sequence of interval sets: every grid
/// interval meeting cover_of(orbit(0, depth), resolution) must contain a
/// sub-interval missing lambdas[d] for some d. Returns the grid intervals
/// where that fails, after the number attempted.
struct ComplementReport {
  std::size_t attempted = 0;
  std::size_t skipped = 0;
  std::vector<Interval> failures;
  std::vector<int> levels;  ///< first d found, per attempted interval
};
ComplementReport certify_by_complement(const IFSPair& p, const std::vector<IntervalSet>& lambdas,
                                       double resolution, int depth);

}  // namespace cantorifs
