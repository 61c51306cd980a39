#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cantorifs/intervals.hpp"
#include "cantorifs/maps.hpp"

namespace cantorifs {

enum class Which { F, G };

/// A failed class-A condition: which bullet, where, and by how much.
struct ClassAViolation {
  std::string bullet;
  double witness = 0.0;
  std::string detail;
};

/// A pair (f, g) that passed class-A validation.
///
/// f fixes 0, g fixes 1, f(x) < x < g(x) on the validation grid, and
/// 0 < g(0) < f(1) < 1. The overlap W = [g(0), f(1)] is cached.
class IFSPair {
 public:
  const MapSpec& f() const noexcept { return f_; }
  const MapSpec& g() const noexcept { return g_; }
  const MapSpec& map(Which w) const noexcept { return w == Which::F ? f_ : g_; }
  const Interval& overlap() const noexcept { return overlap_; }
  const Tolerance& tol() const noexcept { return tol_; }

  /// Validates and throws ValidationError carrying the violated bullet.
  static IFSPair make(MapSpec f, MapSpec g, int grid_n = 10000, Tolerance tol = {});

 private:
  friend std::variant<IFSPair, ClassAViolation> validate_class_a(const MapSpec&, const MapSpec&, int, Tolerance);
  IFSPair(MapSpec f, MapSpec g, Tolerance tol);

  MapSpec f_;
  MapSpec g_;
  Interval overlap_;
  Tolerance tol_;
};

std::variant<IFSPair, ClassAViolation> validate_class_a(const MapSpec& f, const MapSpec& g, int grid_n = 10000,
                                                        Tolerance tol = {});

/// F_n = [f^{n+1}(1), f^n(1)] or G_n = [g^n(0), g^{n+1}(0)].
Interval fundamental_domain(const IFSPair& p, Which which, int n);

/// Sorted, deduplicated sample of the forward orbit of `seed` under words of
/// length at most `depth`.
struct OrbitCloud {
  std::vector<double> points;
  int depth = 0;
  double seed = 0.0;

  /// True when some point lies within `slack` of x.
  bool near(double x, double slack) const;
  /// Number of points strictly inside (lo + margin, hi - margin).
  std::size_t count_inside(const Interval& j, double margin = 0.0) const;
};

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

/// Breadth-first orbit enumeration. Throws ResourceError past `cap` points.
OrbitCloud orbit(const IFSPair& p, double seed, int depth, std::size_t cap = kDefaultOrbitCap);

/// Union of radius-`resolution` intervals around orbit(seed, depth), clipped
/// to [0, 1]. An outer cover of a finite sample of the minimal set.
IntervalSet minimal_set_cover(const IFSPair& p, int depth, double resolution, double seed = 0.0);
IntervalSet cover_of(const OrbitCloud& cloud, double resolution);

/// CSV: one point per line, 17 significant digits.
std::string to_csv(const OrbitCloud& cloud);

/// Pair file: both maps in the interchange format plus optional metadata
/// (for instance a hole seed interval) carried through untouched.
struct PairFile {
  MapSpec f;
  MapSpec g;
  std::string metadata_json = "{}";
};
std::string write_pair_file(const PairFile& pf);
PairFile read_pair_file(const std::string& text, Tolerance tol = {});

}  // namespace cantorifs
