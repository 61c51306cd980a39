// Command-line front end. Exit codes: 0 pass, 1 negative verdict, 2 usage or IO error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

#include "cantorifs/axioms.hpp"
#include "cantorifs/construct.hpp"
#include "cantorifs/error.hpp"
#include "cantorifs/gapfinder.hpp"
#include "cantorifs/ifs.hpp"
#include "cantorifs/plot.hpp"

using namespace cantorifs;
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordered key/value report; the effective config comes first.
class Report {
 public:
  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os.precision(17);
    os << std::boolalpha << value;
    rows_.emplace_back(key, os.str());
  }
  std::string str() const {
    std::string out;
    for (const auto& [k, v] : rows_) out += k + ": " + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string iv(const Interval& j) {
  std::ostringstream os;
  os.precision(17);
  os << '[' << j.lo << ", " << j.hi << ']';
  return os.str();
}

struct Common {
  std::string out_dir = ".";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const Common& c, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  const fs::path path = fs::path(c.out_dir) / name;
  std::ofstream out(path);
  if (!out || !(out << text)) throw UsageError("cannot write " + path.string());
}

void finish(const Common& c, const std::string& name, const Report& r) {
  std::cout << r.str();
  emit(c, name, r.str());
}

struct PairInput {
  std::string path;
  double seed_lo = -1.0;
  double seed_hi = -1.0;
};

void add_pair_options(CLI::App* app, PairInput& in, bool seed) {
  app->add_option("pair", in.path, "pair file")->required();
  if (seed) {
    app->add_option("--seed-lo", in.seed_lo, "hole seed interval, lower end");
    app->add_option("--seed-hi", in.seed_hi, "hole seed interval, upper end");
  }
}

PairFile load(const PairInput& in) {
  try {
    return read_pair_file(slurp(in.path));
  } catch (const Error& e) {
    throw UsageError(in.path + ": " + e.what());
  }
}

std::optional<Interval> hole_seed(const PairInput& in, const PairFile& pf) {
  if (in.seed_lo >= 0.0 || in.seed_hi >= 0.0) {
    if (!(0.0 <= in.seed_lo && in.seed_lo < in.seed_hi && in.seed_hi <= 1.0)) {
      throw UsageError("--seed-lo/--seed-hi must satisfy 0 <= lo < hi <= 1");
    }
    return Interval{in.seed_lo, in.seed_hi};
  }
  const Json meta = Json::parse(pf.metadata_json);
  if (meta.contains("hole_seed") && meta["hole_seed"].is_array() && meta["hole_seed"].size() == 2) {
    return Interval{meta["hole_seed"][0].get<double>(), meta["hole_seed"][1].get<double>()};
  }
  return std::nullopt;
}

/// Class-A validation; on failure the report gets the violated bullet.
std::optional<IFSPair> class_a(const PairFile& pf, Report& r) {
  auto v = validate_class_a(pf.f, pf.g);
  if (auto* bad = std::get_if<ClassAViolation>(&v)) {
    r.add("class_a", "fail");
    r.add("class_a.bullet", bad->bullet);
    r.add("class_a.witness", bad->witness);
    r.add("class_a.detail", bad->detail);
    return std::nullopt;
  }
  r.add("class_a", "pass");
  return std::get<IFSPair>(std::move(v));
}

struct Analysis {
  HolePair hole;
  RuinationRegions regions;
};

std::optional<Analysis> analyse(const IFSPair& p, const Interval& seed, Report& r) {
  try {
    Analysis a{find_hole(p, seed), {}};
    a.regions = ruination_regions(p, a.hole);
    return a;
  } catch (const Error& e) {
    r.add("ho", "fail");
    r.add("ho.detail", e.what());
    return std::nullopt;
  }
}

int cmd_validate(const Common& c, const PairInput& in, int ee_grid) {
  Report r;
  r.add("config.command", "validate");
  r.add("config.pair", in.path);
  r.add("config.ee_grid", ee_grid);
  const PairFile pf = load(in);
  const auto seed = hole_seed(in, pf);
  if (seed) r.add("config.hole_seed", iv(*seed));
  const auto p = class_a(pf, r);
  if (!p) {
    finish(c, "validate.txt", r);
    return 1;
  }
  const SoReport so = check_so(*p);
  r.add("so", so.ok ? "pass" : "fail");
  r.add("so.margin_f", so.margin_f);
  r.add("so.margin_g", so.margin_g);
  if (!seed) throw UsageError("no hole seed: pass --seed-lo/--seed-hi or store hole_seed in the pair metadata");
  const auto a = analyse(*p, *seed, r);
  if (!a) {
    finish(c, "validate.txt", r);
    return 1;
  }
  const HoReport ho = validate_hole(*p, a->hole);
  r.add("ho", ho.ok ? "pass" : "fail");
  r.add("ho.h_f", iv(a->hole.h_f));
  r.add("ho.invariance_residual", ho.invariance_residual);
  r.add("ho.margin_f", ho.margin_f);
  r.add("ho.margin_g", ho.margin_g);
  const ExpansionReport ee = check_ee(*p, a->hole, 1.0, ee_grid);
  r.add("ee", ee.passed ? "pass" : "fail");
  r.add("ee.mu", ee.mu);
  r.add("ee.samples", ee.samples);
  const CaReport ca = check_ca(*p, a->regions);
  r.add("ca", ca.ok ? "pass" : "fail");
  r.add("ca.g0_in_rf", ca.g0_in_rf);
  r.add("ca.f1_in_rg", ca.f1_in_rg);
  if (ca.witness) r.add("ca.witness", *ca.witness);
  const bool ok = so.ok && ho.ok && ee.passed && ca.ok;
  r.add("verdict", ok ? "pass" : "fail");
  finish(c, "validate.txt", r);
  return ok ? 0 : 1;
}

int cmd_construct(const Common& c, const ConstructionParams& params) {
  Report r;
  r.add("config.command", "construct");
  r.add("config.p", params.p);
  r.add("config.q", params.q);
  r.add("config.jp_width", params.jp_width);
  r.add("config.bump_strength", params.bump_strength);
  r.add("config.k", params.k);
  r.add("config.n_target", params.n_target);
  r.add("config.n_search_max", params.n_search_max);
  r.add("config.ee_grid", params.ee_grid);
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::optional<ClassCExample> built;
  try {
    built = build_class_c_example(params);
  } catch (const StageError& e) {
    r.add("stage", e.stage());
    r.add("verdict", "fail");
    r.add("detail", e.what());
    finish(c, "construct.txt", r);
    return 1;
  }
  const ClassCExample& ex = *built;
  r.add("delta", ex.delta);
  r.add("alpha0", ex.alpha0);
  r.add("alpha", ex.alpha);
  r.add("n", ex.n);
  r.add("so.margin_f", ex.so.margin_f);
  r.add("so.margin_g", ex.so.margin_g);
  r.add("ho.margin_f", ex.ho.margin_f);
  r.add("ho.margin_g", ex.ho.margin_g);
  r.add("ee.mu", ex.ee.mu);
  r.add("ca", ex.ca.ok ? "pass" : "fail");
  r.add("verdict", "pass");
  Json meta;
  meta["hole_seed"] = {ex.j_p.lo, ex.j_p.hi};
  meta["alpha"] = ex.alpha;
  meta["n"] = ex.n;
  emit(c, "pair.json", write_pair_file(PairFile{ex.pair.f(), ex.pair.g(), meta.dump()}));
  emit(c, "pair.svg", plot_pair_svg(ex.pair, PlotLayers{ex.hole, ex.regions, {}, "constructed pair"}));
  finish(c, "construct.txt", r);
  return 0;
}

int cmd_orbit(const Common& c, const PairInput& in, int depth, double seed) {
  Report r;
  r.add("config.command", "orbit");
  r.add("config.pair", in.path);
  r.add("config.depth", depth);
  r.add("config.seed", seed);
  const PairFile pf = load(in);
  const auto p = class_a(pf, r);
  if (!p) {
    finish(c, "orbit.txt", r);
    return 1;
  }
  const OrbitCloud cloud = orbit(*p, seed, depth);
  r.add("points", cloud.points.size());
  emit(c, "orbit.csv", to_csv(cloud));
  finish(c, "orbit.txt", r);
  return 0;
}

int cmd_minimal_set(const Common& c, const PairInput& in, int depth, double resolution, double seed) {
  Report r;
  r.add("config.command", "minimal-set");
  r.add("config.pair", in.path);
  r.add("config.depth", depth);
  r.add("config.resolution", resolution);
  r.add("config.seed", seed);
  const PairFile pf = load(in);
  const auto p = class_a(pf, r);
  if (!p) {
    finish(c, "minimal_set.txt", r);
    return 1;
  }
  const IntervalSet cover = minimal_set_cover(*p, depth, resolution, seed);
  r.add("parts", cover.size());
  r.add("measure", measure(cover));
  emit(c, "cover.csv", to_csv(cover));
  emit(c, "cover.svg", plot_strip_svg(cover, "minimal set cover, depth " + std::to_string(depth)));
  finish(c, "minimal_set.txt", r);
  return 0;
}

struct GapOptions {
  double lo = -1.0;
  double hi = -1.0;
  bool certify = false;
  double resolution = 1e-2;
  int depth = 14;
  int verify_depth = 18;
  unsigned workers = 0;
};

int cmd_gaps(const Common& c, const PairInput& in, const GapOptions& o) {
  Report r;
  r.add("config.command", "gaps");
  r.add("config.pair", in.path);
  r.add("config.certify", o.certify);
  r.add("config.lo", o.lo);
  r.add("config.hi", o.hi);
  r.add("config.resolution", o.resolution);
  r.add("config.depth", o.depth);
  r.add("config.verify_depth", o.verify_depth);
  if (o.certify == (o.lo >= 0.0 || o.hi >= 0.0)) throw UsageError("pass either --lo/--hi or --certify");
  if (!o.certify && !(0.0 <= o.lo && o.lo < o.hi && o.hi <= 1.0)) throw UsageError("need 0 <= lo < hi <= 1");
  const PairFile pf = load(in);
  const auto p = class_a(pf, r);
  if (!p) {
    finish(c, "gaps.txt", r);
    return 1;
  }
  const auto seed = hole_seed(in, pf);
  if (!seed) throw UsageError("no hole seed: pass --seed-lo/--seed-hi or store hole_seed in the pair metadata");
  const auto a = analyse(*p, *seed, r);
  if (!a) {
    finish(c, "gaps.txt", r);
    return 1;
  }
  const GapFinder gf(*p, a->hole, a->regions, boundary_sets(*p, a->hole, a->regions));
  r.add("mu", gf.mu());
  if (!o.certify) {
    try {
      GapCertificate cert = gf.find_gap(Interval{o.lo, o.hi});
      const bool clean = GapFinder::verify(cert, orbit(*p, 0.0, o.verify_depth));
      r.add("output", iv(cert.output));
      r.add("terminal", to_string(cert.terminal_reason));
      r.add("orbit_hits", *cert.orbit_hits);
      r.add("verdict", clean ? "no orbit witness at verification depth" : "fail");
      emit(c, "gap_trace.txt", describe(cert));
      std::cout << describe(cert);
      finish(c, "gaps.txt", r);
      return clean ? 0 : 1;
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    } catch (const Error& e) {
      r.add("verdict", "fail");
      r.add("detail", e.what());
      finish(c, "gaps.txt", r);
      return 1;
    }
  }
  if (!(o.resolution > 0.0 && o.resolution <= 0.5)) throw UsageError("--resolution must lie in (0, 1/2]");
  const CertificationReport rep = certify_cantor(gf, o.resolution, o.depth, o.verify_depth, o.workers);
  r.add("grid_total", rep.grid_total);
  r.add("skipped", rep.skipped);
  r.add("certified", rep.certificates.size());
  r.add("failed", rep.failures.size());
  r.add("min_gap", rep.min_gap);
  r.add("max_gap", rep.max_gap);
  r.add("mean_gap", rep.mean_gap);
  r.add("max_trace", rep.max_trace);
  r.add("verdict", rep.all_certified() ? "no orbit witness at verification depth" : "fail");
  emit(c, "gaps.csv", to_csv(rep));
  finish(c, "gaps.txt", r);
  return rep.all_certified() ? 0 : 1;
}

int cmd_appendix(const Common& c, const AppendixParams& params, int n_max) {
  Report r;
  r.add("config.command", "appendix");
  r.add("config.eps", params.eps);
  r.add("config.lambda", params.lambda);
  r.add("config.n_max", n_max);
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (n_max < 1 || n_max > 40) throw UsageError("--n-max must lie in [1, 40]");
  std::optional<AppendixPair> built;
  try {
    built = appendix_pair(params);
  } catch (const StageError& e) {
    r.add("verdict", "fail");
    r.add("detail", e.what());
    finish(c, "appendix.txt", r);
    return 1;
  }
  const AppendixPair& ap = *built;
  const MeasureBoundReport mb = check_measure_bound(ap, n_max);
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,measure,bound\n";
  for (std::size_t n = 0; n < mb.measures.size(); ++n) csv << n << ',' << mb.measures[n] << ',' << mb.bounds[n] << '\n';
  r.add("i_m1", iv(ap.i_m1));
  r.add("i_0", iv(ap.i_0));
  r.add("i_1", iv(ap.i_1));
  r.add("measure_last", mb.measures.back());
  r.add("bound_last", mb.bounds.back());
  r.add("verdict", mb.ok ? "pass" : "fail");
  emit(c, "appendix.csv", csv.str());
  emit(c, "appendix_pair.json", write_pair_file(PairFile{ap.pair.f(), ap.pair.g(), "{}"}));
  emit(c, "appendix.svg", plot_pair_svg(ap.pair, PlotLayers{{}, {}, {ap.i_m1, ap.i_0, ap.i_1}, "appendix pair"}));
  const int strip_n = std::min(n_max, 10);
  emit(c, "lambda.svg", plot_strip_svg(lambda_sets(ap, strip_n), "Lambda_" + std::to_string(strip_n)));
  finish(c, "appendix.txt", r);
  return mb.ok ? 0 : 1;
}

int cmd_plot(const Common& c, const PairInput& in, int depth, double resolution) {
  Report r;
  r.add("config.command", "plot");
  r.add("config.pair", in.path);
  r.add("config.depth", depth);
  r.add("config.resolution", resolution);
  const PairFile pf = load(in);
  const auto p = class_a(pf, r);
  if (!p) {
    finish(c, "plot.txt", r);
    return 1;
  }
  PlotLayers layers;
  layers.title = in.path;
  if (const auto seed = hole_seed(in, pf)) {
    if (const auto a = analyse(*p, *seed, r)) {
      layers.hole = a->hole;
      layers.regions = a->regions;
    }
  }
  emit(c, "pair.svg", plot_pair_svg(*p, layers));
  emit(c, "cover.svg", plot_strip_svg(minimal_set_cover(*p, depth, resolution), "minimal set cover"));
  r.add("layers.hole", layers.hole.has_value());
  r.add("layers.regions", layers.regions.has_value());
  finish(c, "plot.txt", r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-map interval IFS toolkit: axioms, construction, gaps, Appendix experiments"};
  app.require_subcommand(1);
  Common common;
  app.add_option("-o,--out-dir", common.out_dir, "directory for artifacts");

  PairInput pin;
  int ee_grid = 10000;
  auto* validate = app.add_subcommand("validate", "check class A, So, Ho, Ee, Ca on a pair file");
  add_pair_options(validate, pin, true);
  validate->add_option("--ee-grid", ee_grid)->check(CLI::Range(10, 1000000));

  ConstructionParams cp;
  auto* construct = app.add_subcommand("construct", "run the construction pipeline");
  construct->add_option("--p", cp.p);
  construct->add_option("--q", cp.q);
  construct->add_option("--jp-width", cp.jp_width);
  construct->add_option("--bump-strength", cp.bump_strength);
  construct->add_option("--k", cp.k);
  construct->add_option("--n-target", cp.n_target);
  construct->add_option("--n-search-max", cp.n_search_max);
  construct->add_option("--ee-grid", cp.ee_grid);

  int depth = 12;
  double seed = 0.0;
  auto* orb = app.add_subcommand("orbit", "export the forward orbit as CSV");
  add_pair_options(orb, pin, false);
  orb->add_option("--depth", depth)->check(CLI::Range(0, 30));
  orb->add_option("--seed", seed)->check(CLI::Range(0.0, 1.0));

  double resolution = 1e-2;
  auto* ms = app.add_subcommand("minimal-set", "cover of the minimal set as CSV and SVG strip");
  add_pair_options(ms, pin, false);
  ms->add_option("--depth", depth)->check(CLI::Range(1, 30));
  ms->add_option("--resolution", resolution)->check(CLI::Range(1e-12, 0.5));
  ms->add_option("--seed", seed)->check(CLI::Range(0.0, 1.0));

  GapOptions go;
  auto* gaps = app.add_subcommand("gaps", "find a gap in one interval or certify a grid");
  add_pair_options(gaps, pin, true);
  gaps->add_option("--lo", go.lo);
  gaps->add_option("--hi", go.hi);
  gaps->add_flag("--certify", go.certify);
  gaps->add_option("--resolution", go.resolution);
  gaps->add_option("--depth", go.depth)->check(CLI::Range(1, 30));
  gaps->add_option("--verify-depth", go.verify_depth)->check(CLI::Range(1, 24));
  gaps->add_option("--workers", go.workers);

  AppendixParams apx;
  int n_max = 20;
  auto* appendix = app.add_subcommand("appendix", "Appendix pair and the measure bound table");
  appendix->add_option("--eps", apx.eps);
  appendix->add_option("--lambda", apx.lambda);
  appendix->add_option("--n-max", n_max);

  int plot_depth = 14;
  double plot_resolution = 2e-3;
  auto* plot = app.add_subcommand("plot", "SVG of both graphs with W, F_1, G_1 and holes");
  add_pair_options(plot, pin, true);
  plot->add_option("--depth", plot_depth)->check(CLI::Range(1, 24));
  plot->add_option("--resolution", plot_resolution)->check(CLI::Range(1e-12, 0.5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(common, pin, ee_grid);
    if (*construct) return cmd_construct(common, cp);
    if (*orb) return cmd_orbit(common, pin, depth, seed);
    if (*ms) return cmd_minimal_set(common, pin, depth, resolution, seed);
    if (*gaps) return cmd_gaps(common, pin, go);
    if (*appendix) return cmd_appendix(common, apx, n_max);
    if (*plot) return cmd_plot(common, pin, plot_depth, plot_resolution);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
