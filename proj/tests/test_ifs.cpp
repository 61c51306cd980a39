#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "cantorifs/error.hpp"
#include "cantorifs/ifs.hpp"

using namespace cantorifs;

namespace {

IFSPair contracting_pair() {
  return IFSPair::make(MapSpec::affine(0.6, 0.0, "f"), MapSpec::affine(0.6, 0.4, "g"));
}

// Recursive enumeration of every word image, no dedup until the end.
std::vector<double> brute_orbit(const IFSPair& p, double seed, int depth) {
  std::vector<double> out;
  std::function<void(double, int)> rec = [&](double x, int d) {
    out.push_back(x);
    if (d == depth) return;
    rec(p.f().eval(x), d + 1);
    rec(p.g().eval(x), d + 1);
  };
  rec(seed, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool covered(const std::vector<double>& pts, double x, double eps) {
  auto it = std::lower_bound(pts.begin(), pts.end(), x - eps);
  return it != pts.end() && *it <= x + eps;
}

}  // namespace

TEST_CASE("class A validation") {
  auto base = validate_class_a(MapSpec::affine(0.5, 0.0), MapSpec::affine(0.5, 0.5));
  REQUIRE(std::holds_alternative<ClassAViolation>(base));
  CHECK(std::get<ClassAViolation>(base).bullet == "0 < g(0) < f(1) < 1");

  auto id = validate_class_a(MapSpec::identity(), MapSpec::identity());
  REQUIRE(std::holds_alternative<ClassAViolation>(id));
  CHECK(std::get<ClassAViolation>(id).bullet == "f(x) < x");

  auto shifted = validate_class_a(MapSpec::affine(0.5, 0.01), MapSpec::affine(0.6, 0.4));
  REQUIRE(std::holds_alternative<ClassAViolation>(shifted));
  CHECK(std::get<ClassAViolation>(shifted).bullet == "f(0) = 0");

  const auto p = contracting_pair();
  CHECK(p.overlap().lo == doctest::Approx(0.4));
  CHECK(p.overlap().hi == doctest::Approx(0.6));
  CHECK_THROWS_AS(IFSPair::make(MapSpec::identity(), MapSpec::identity()), ValidationError);
}

TEST_CASE("fundamental domains tile") {
  const auto p = contracting_pair();
  CHECK(fundamental_domain(p, Which::F, 0) == Interval{0.6, 1.0});
  CHECK(fundamental_domain(p, Which::G, 0) == Interval{0.0, 0.4});
  const int N = 12;
  for (int n = 0; n < N; ++n) {
    CHECK(fundamental_domain(p, Which::F, n + 1).hi == fundamental_domain(p, Which::F, n).lo);
    CHECK(fundamental_domain(p, Which::G, n + 1).lo == fundamental_domain(p, Which::G, n).hi);
  }
  double total = fundamental_domain(p, Which::F, N).lo;
  for (int n = 0; n <= N; ++n) total += fundamental_domain(p, Which::F, n).length();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(fundamental_domain(p, Which::F, -1), DomainError);
}

TEST_CASE("orbit basics") {
  const auto p = contracting_pair();
  CHECK(orbit(p, 0.0, 0).points == std::vector<double>{0.0});
  CHECK(orbit(p, 0.0, 1).points == std::vector<double>{0.0, 0.4});
  const auto one = orbit(p, 1.0, 1);
  CHECK(one.points == std::vector<double>{0.6, 1.0});
  CHECK_THROWS_AS(orbit(p, 1.5, 3), DomainError);
  CHECK_THROWS_AS(orbit(p, 0.0, 20, 1000), ResourceError);
}

TEST_CASE("orbit matches the recursive enumerator at depth 12") {
  const auto p = contracting_pair();
  const auto cloud = orbit(p, 0.0, 12);
  const auto brute = brute_orbit(p, 0.0, 12);
  const double eps = p.tol().eps_geom;
  for (double x : brute) CHECK(covered(cloud.points, x, eps));
  for (double x : cloud.points) CHECK(covered(brute, x, eps));
  CHECK(std::is_sorted(cloud.points.begin(), cloud.points.end()));
}

TEST_CASE("orbit invariance and monotonicity in depth") {
  const auto p = contracting_pair();
  const double eps = p.tol().eps_geom;
  const auto d8 = orbit(p, 0.0, 8);
  const auto d9 = orbit(p, 0.0, 9);
  for (double x : d8.points) {
    CHECK(d9.near(x, eps));
    CHECK(d9.near(p.f().eval(x), eps));
    CHECK(d9.near(p.g().eval(x), eps));
  }
}

TEST_CASE("minimal set covers") {
  const auto p = contracting_pair();
  CHECK_THROWS_AS(minimal_set_cover(p, 0, 0.01), DomainError);
  CHECK_THROWS_AS(minimal_set_cover(p, 3, 0.0), DomainError);
  // Overlapping images: the minimal set is the whole interval.
  const auto c = minimal_set_cover(p, 14, 1e-2);
  CHECK(c == IntervalSet::unit());
}

TEST_CASE("seed agreement improves with depth") {
  const auto p = contracting_pair();
  const double r = 1e-3;
  double prev = 1.0;
  for (int d : {6, 9, 12}) {
    const double h = hausdorff_distance(minimal_set_cover(p, d, r, 0.0), minimal_set_cover(p, d, r, 1.0));
    CHECK(h <= prev + 1e-15);
    prev = h;
  }
  CHECK(prev <= 2 * r);
}

TEST_CASE("orbit csv and pair file roundtrip") {
  const auto p = contracting_pair();
  CHECK(to_csv(orbit(p, 0.0, 1)) == "0\n0.40000000000000002\n");
  PairFile pf{p.f(), p.g(), R"({"hole_seed":[0.1,0.2]})"};
  const auto back = read_pair_file(write_pair_file(pf));
  CHECK(max_abs_difference(back.f, p.f()) == 0.0);
  CHECK(max_abs_difference(back.g, p.g()) == 0.0);
  CHECK(back.metadata_json == R"({"hole_seed":[0.1,0.2]})");
  CHECK_THROWS_AS(read_pair_file("not json"), ValidationError);
  CHECK_THROWS_AS(read_pair_file("{}"), ValidationError);
}
