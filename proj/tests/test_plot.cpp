#include <doctest.h>

#include <string>

#include "cantorifs/plot.hpp"
#include "fixtures.hpp"

using namespace cantorifs;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("pair plot layers and determinism") {
  const auto& ex = fixture::example();
  const PlotLayers layers{ex.hole, ex.regions, {}, "example & <pair>"};
  const auto a = plot_pair_svg(ex.pair, layers);
  const auto b = plot_pair_svg(ex.pair, layers);
  CHECK(a == b);
  CHECK(a.find("viewBox=\"0 0 800.000000 800.000000\"") != std::string::npos);
  for (const char* cls : {"class=\"F1\"", "class=\"G1\"", "class=\"W\"", "class=\"Hf\"", "class=\"Hg\"",
                          "class=\"diagonal\"", "class=\"f\"", "class=\"g\""}) {
    CHECK(count(a, cls) == 1);
  }
  CHECK(count(a, "class=\"Rf\"") == ex.regions.f_parts.size());
  CHECK(a.find("example &amp; &lt;pair&gt;") != std::string::npos);

  const auto bare = plot_pair_svg(ex.pair);
  CHECK(count(bare, "class=\"Hf\"") == 0);
}

TEST_CASE("appendix plot shows three diagonal blocks") {
  const auto& ap = fixture::appendix();
  const auto svg = plot_pair_svg(ap.pair, PlotLayers{{}, {}, {ap.i_m1, ap.i_0, ap.i_1}, {}});
  CHECK(count(svg, "class=\"block\"") == 3);
}

TEST_CASE("strip of Lambda_10") {
  const auto& ap = fixture::appendix();
  const IntervalSet l10 = lambda_sets(ap, 10);
  const auto svg = plot_strip_svg(l10, "Lambda_10");
  CHECK(svg.find("viewBox=\"0 0 800.000000 80.000000\"") != std::string::npos);
  CHECK(count(svg, "class=\"part\"") == l10.size());
  CHECK(l10.size() >= 1024);
  CHECK(plot_strip_svg(l10, "Lambda_10") == svg);
}
