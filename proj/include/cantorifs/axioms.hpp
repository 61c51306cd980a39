#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantorifs/ifs.hpp"

namespace cantorifs {

struct SoReport {
  bool ok = false;
  double margin_f = 0.0;  ///< g(0) - f^2(1)
  double margin_g = 0.0;  ///< g^2(0) - f(1)
};

/// Inequality form: f^2(1) < g(0) and f(1) < g^2(0), margins >= eps_geom.
SoReport check_so(const IFSPair& p);
/// Containment form: W inside int(F_1 u G_1) with margin eps_geom.
bool check_so_containment(const IFSPair& p);

struct HolePair {
  Interval h_f;
  Interval h_g;
};

/// Limit of the nested images (f o g)^n(seed). Throws HypothesisError unless
/// f o g maps seed into its own interior, DegenerateHoleError when the limit
/// is shorter than 10 eps_geom.
Interval nested_fixed_interval(const MapSpec& f, const MapSpec& g, const Interval& seed, int max_n = 10000,
                               Tolerance tol = {});

/// H_f from the seed, H_g = g(H_f); throws ValidationError when Ho fails.
HolePair find_hole(const IFSPair& p, const Interval& seed, int max_n = 10000);

struct HoReport {
  bool ok = false;
  double invariance_residual = 0.0;  ///< max endpoint error of g(H_f) = H_g, f(H_g) = H_f
  double margin_f = 0.0;             ///< distance of H_f to the boundary of F_1 \ W
  double margin_g = 0.0;
  std::string message;
};
HoReport validate_hole(const IFSPair& p, const HolePair& h);

/// Value, derivative and return count of an induced map at one point.
struct InducedPoint {
  int n = 0;
  double value = 0.0;
  double deriv = 0.0;
};

/// Which::F evaluates x -> g^{-n}(f^{-1} x) on F_1 \ {f(1)} with the least n
/// landing in G_1; Which::G is the mirror on G_1 \ {g(0)}.
InducedPoint induced(const IFSPair& p, Which which, double x);
int induced_n(const IFSPair& p, Which which, double x);
double induced_map(const IFSPair& p, Which which, double x);
double induced_deriv(const IFSPair& p, Which which, double x);

/// Points where the return count jumps, ordered toward the accumulation
/// point, stopping once they come within `min_gap` of it. For F these are
/// f(g^m(0)), m >= 2.
std::vector<double> discontinuities(const IFSPair& p, Which which, double min_gap = 1e-15);

struct ExpansionReport {
  bool passed = false;
  double mu = 0.0;  ///< minimum sampled derivative
  double mu_target = 1.0;
  int samples = 0;
  double min_site = 0.0;
  Which min_map = Which::F;
};

/// Samples both induced derivatives on a uniform grid of F_1 \ int(H_f) and
/// G_1 \ int(H_g), on a grid of W of the same size, and on `extra` sites.
ExpansionReport check_ee(const IFSPair& p, const HolePair& h, double mu_target = 1.0, int grid_n = 10000,
                         const std::vector<double>& extra = {});

struct IndexedPart {
  Interval part;
  int n = 0;
};

struct RuinationRegions {
  std::vector<IndexedPart> f_parts;  ///< f(g^n(H_g)), n = 0, 1, ...
  std::vector<IndexedPart> g_parts;  ///< g(f^n(H_f))
  IntervalSet r_f;
  IntervalSet r_g;
  int n_max = 0;  ///< deepest index kept
  int dropped_f = 0;
  int dropped_g = 0;
};

/// Closed-form push-forwards for n = 0..n_max. Parts shorter than
/// `min_length` are dropped and counted; enumeration ends once the carried
/// interval is 1000 times shorter than that.
RuinationRegions ruination_regions(const IFSPair& p, const HolePair& h, int n_max = 200,
                                   double min_length = 1e-9);

struct CaReport {
  bool ok = false;
  bool g0_in_rf = false;
  bool f1_in_rg = false;
  std::optional<double> witness;  ///< an uncovered point of W
};

/// W inside int(R_f) u int(R_g) with margin; the two endpoint memberships are
/// checked first and reported.
CaReport check_ca(const IFSPair& p, const RuinationRegions& r, double margin = 1e-9);

struct BoundarySets {
  std::vector<double> b_f;
  std::vector<double> b_g;
};
BoundarySets boundary_sets(const IFSPair& p, const HolePair& h, const RuinationRegions& r);

/// R_f n R_g as a normalized set without merging.
IntervalSet ruination_overlap(const RuinationRegions& r);

/// Number of points strictly inside int(H_f) u int(H_g) beyond `margin`.
std::size_t count_hole_violations(const OrbitCloud& cloud, const HolePair& h, double margin = 1e-9);

}  // namespace cantorifs
