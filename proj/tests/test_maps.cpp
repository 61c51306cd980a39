#include <doctest.h>

#include <cmath>
#include <random>

#include "cantorifs/error.hpp"
#include "cantorifs/maps.hpp"

using namespace cantorifs;

namespace {

const MapSpec f_star = MapSpec::affine(0.5, 0.0, "f*");
const MapSpec g_star = MapSpec::affine(0.5, 0.5, "g*");

// A strictly increasing C^1 map with affine and Hermite pieces.
MapSpec wiggly() {
  std::vector<Segment> segs;
  segs.emplace_back(0.0, 0.3, Affine{0.8, 0.0});
  for (auto& s : monotone_ramp(0.3, 0.24, 0.8, 0.6, 0.9, 0.1)) segs.push_back(s);
  segs.emplace_back(0.6, 1.0, Affine{0.1, 0.84});
  return MapSpec(std::move(segs), "wiggly");
}

bool near_breakpoint(const MapSpec& m, double x, double h) {
  for (double b : m.breakpoints()) {
    if (std::abs(b - x) < 2 * h) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("eval and deriv on the base pair") {
  CHECK(f_star.eval(1.0) == 0.5);
  CHECK(g_star.eval(0.0) == 0.5);
  CHECK(MapSpec::identity().eval(0.37) == 0.37);
  for (double x : {0.0, 0.2, 0.9}) CHECK(f_star.deriv(x) == 0.5);
  CHECK(MapSpec::identity().deriv(0.2) == 1.0);
  CHECK_THROWS_AS(f_star.eval(1.5), DomainError);
  CHECK_THROWS_AS(f_star.deriv(-0.1), DomainError);
}

TEST_CASE("derivative matches central differences away from breakpoints") {
  const auto m = wiggly();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1e-3, 1 - 1e-3);
  const double h = 1e-6;
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    if (near_breakpoint(m, x, h)) continue;
    const double fd = (m.eval(x + h) - m.eval(x - h)) / (2 * h);
    CHECK(std::abs(fd - m.deriv(x)) / m.deriv(x) < 1e-6);
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("inverse_eval") {
  CHECK(f_star.inverse_eval(0.25) == 0.5);
  CHECK(g_star.inverse_eval(0.75) == 0.5);
  CHECK_THROWS_AS(f_star.inverse_eval(0.7), RangeError);
  const auto m = wiggly();
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    CHECK(std::abs(m.inverse_eval(m.eval(x)) - x) <= 1e-9);
  }
}

TEST_CASE("apply_word uses rightmost-first order") {
  CHECK(apply_word(f_star, g_star, Word(""), 0.3) == 0.3);
  CHECK(apply_word(f_star, g_star, Word("FG"), 0.0) == 0.25);
  CHECK(apply_word(f_star, g_star, Word("GF"), 0.0) == 0.5);
  CHECK_THROWS_AS(Word("FX"), DomainError);
}

TEST_CASE("iterate") {
  CHECK(iterate(f_star, 3, 1.0) == 0.125);
  CHECK(iterate(wiggly(), 0, 0.42) == 0.42);
  CHECK(iterate(g_star, 2, 0.0) == 0.75);
}

TEST_CASE("symmetry_conjugate") {
  const auto c = symmetry_conjugate(f_star);
  CHECK(max_abs_difference(c, g_star) < 1e-15);
  CHECK(max_abs_difference(symmetry_conjugate(MapSpec::identity()), MapSpec::identity()) < 1e-15);
  const auto m = wiggly();
  const auto cc = symmetry_conjugate(symmetry_conjugate(m));
  REQUIRE(cc.segments().size() == m.segments().size());
  for (std::size_t i = 0; i < m.segments().size(); ++i) {
    CHECK(std::abs(cc.segments()[i].x_lo() - m.segments()[i].x_lo()) <= 1e-9);
    CHECK(std::abs(cc.segments()[i].y_hi() - m.segments()[i].y_hi()) <= 1e-9);
  }
  CHECK(symmetry_residual(m, symmetry_conjugate(m)) <= 1e-12);
}

TEST_CASE("invariants: monotonicity and C1 joins") {
  const auto m = wiggly();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    double x = u(rng), y = u(rng);
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    CHECK(m.eval(x) < m.eval(y));
  }
  // A kink is rejected.
  std::vector<Segment> kinked{Segment(0, 0.5, Affine{0.5, 0}), Segment(0.5, 1, Affine{0.6, -0.05})};
  CHECK_THROWS_AS(MapSpec(kinked, "kink"), ValidationError);
  // A jump is rejected.
  std::vector<Segment> jump{Segment(0, 0.5, Affine{0.5, 0}), Segment(0.5, 1, Affine{0.5, 0.01})};
  CHECK_THROWS_AS(MapSpec(jump, "jump"), ValidationError);
  // A non-monotone Hermite piece is rejected.
  CHECK_THROWS_AS(Segment(0, 1, CubicHermite{0, 0.1, 5, 5}), ValidationError);
}

TEST_CASE("json roundtrip") {
  const auto m = wiggly();
  const auto back = map_from_json(to_json(m));
  CHECK(back.label() == "wiggly");
  CHECK(max_abs_difference(m, back, 997) == 0.0);
  CHECK_THROWS_AS(map_from_json("{\"segments\": 3}"), ValidationError);
}
