#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cantorifs/axioms.hpp"
#include "cantorifs/ifs.hpp"

namespace cantorifs {

struct ConstructionParams {
  double p = 1.0 / 3.0;
  double q = 2.0 / 3.0;
  double jp_width = 0.01;      ///< |J_p| = |J_q|
  double bump_strength = 4.0;  ///< derivative of f0 o g0 on J'_p
  double k = 0.005;            ///< width of the affine corner at 1 (and 0)
  /// Admissible eps window (0, delta); hi <= 0 selects delta automatically.
  Interval epsilon_range{0.0, 0.0};
  int n_target = 10;
  int n_search_max = 12;  ///< last alpha index tried by the expansion search
  int ee_grid = 10000;

  /// Throws DomainError on out-of-range values.
  void validate() const;
};

struct AppendixParams {
  double eps = 0.01;
  double lambda = 0.45;
  void validate() const;
};

std::pair<MapSpec, MapSpec> base_pair();

struct Bump {
  MapSpec f0;
  MapSpec g0;
  Interval j_p;
  Interval j_q;
  Interval j_prime_p;
  Interval j_prime_q;
  double plateau_slope = 0.0;
};

/// f0 = f* except on [q - a, q + a], a = jp_width / 2, whose image is near p;
/// g0 is its diagonal mirror. Throws HypothesisError when a containment or
/// the contraction of f0 o g0 on J_p fails.
Bump bump_modify(const ConstructionParams& params);

/// Unvalidated maps of the eps-family: f affine with slope 1/2 + eps on
/// [1 - k, 1], C^1-joined to f0 over [1 - 3k/2, 1 - k]; g its mirror.
std::pair<MapSpec, MapSpec> epsilon_maps(const MapSpec& f0, double k, double eps);
/// The validated pair; throws ValidationError when class A or So fails.
IFSPair epsilon_family(const MapSpec& f0, double k, double eps);

/// eps -> f_eps^{-1}(g_eps(0)).
double return_point(const MapSpec& f0, double k, double eps);

/// Largest dyadic delta = 2^-j for which the family validates (class A, So,
/// Ho) at delta and at delta / 1024.
double find_delta(const Bump& bump, const ConstructionParams& params);

/// Forward g-images of H_p until they are shorter than eps_geom.
IntervalSet h_prime(const MapSpec& g, const Interval& h_p, int n_max = 200, double min_length = 1e-9);

/// eps in (0, delta) with f_eps^{-1}(g_eps(0)) at the midpoint of g^n(H_p).
/// Throws RangeError when the target is out of reach of the window.
double find_c_parameter(const MapSpec& f0, const MapSpec& g0, double k, const Interval& h_p, int n,
                        const Interval& eps_window);

/// alpha_0 .. alpha_{count-1}: f_a^{-1}(g_a(0)) = g^n(f_{a0}^{-1}(g_{a0}(0))).
std::vector<double> alpha_sequence(const MapSpec& f0, double k, double alpha0, int count);

/// Orientation-preserving affine map of w_from onto w_to.
double phi_rescale(const Interval& w_from, const Interval& w_to, double x);
Interval phi_rescale(const Interval& w_from, const Interval& w_to, const Interval& x);

/// Surgery map on W, expressed on [0, 1] through t = (x - W.lo) / |W|.
/// Identity near 0, slope 1 at both ends. One R_g part is stretched over the
/// first gap of R_f after the part holding g(0), and the part holding f(1)
/// is stretched back over the following R_f part. Throws StageError("gamma")
/// when the required parts are missing.
MapSpec build_gamma(const RuinationRegions& r, const Interval& w);

/// g with the surgery applied on g^{-1}(w_n): there g_new = G o g, where G is
/// gamma transported to w_n. g must be affine on g^{-1}(w_n).
MapSpec castrate(const MapSpec& g, const MapSpec& gamma_unit, const Interval& w_n);

struct ClassCExample {
  IFSPair pair;
  HolePair hole;
  RuinationRegions regions;
  SoReport so;
  HoReport ho;
  ExpansionReport ee;
  CaReport ca;
  double delta = 0.0;
  double alpha0 = 0.0;
  double alpha = 0.0;
  int n = 0;
  MapSpec gamma;
  Interval j_p;
  ConstructionParams params;
};

/// Whole pipeline; increases the alpha index until Ee passes. Stage failures
/// surface as StageError naming the stage.
ClassCExample build_class_c_example(const ConstructionParams& params = {});

struct AppendixPair {
  IFSPair pair;
  Interval i_m1;
  Interval i_0;
  Interval i_1;
  AppendixParams params;
};

/// Affine pieces of slope 0.9 lambda on I_-1, I_0, I_1 joined by C^1 ramps.
/// Throws StageError("appendix") when the inclusions cannot be met.
AppendixPair appendix_pair(const AppendixParams& params = {});

/// Lambda_0 .. Lambda_n with exact images; throws ValidationError when a
/// step is not nested in the previous one.
std::vector<IntervalSet> lambda_sequence(const AppendixPair& ap, int n);
IntervalSet lambda_sets(const AppendixPair& ap, int n);

struct MeasureBoundReport {
  bool ok = false;
  std::vector<double> measures;
  std::vector<double> bounds;
  std::vector<double> ratios;  ///< measure(n + 1) / measure(n)
};
MeasureBoundReport check_measure_bound(const AppendixPair& ap, int n_max);

}  // namespace cantorifs
