#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cantorifs/construct.hpp"

using namespace cantorifs;
namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "cantorifs_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(CANTORIFS_CLI) + " -o " + scratch().string() + " " + args + " > " +
                          (scratch() / "stdout.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string& constructed() {
  static const std::string path = [] {
    REQUIRE(run("construct") == 0);
    return (scratch() / "pair.json").string();
  }();
  return path;
}

}  // namespace

TEST_CASE("construct then validate") {
  const auto& pair = constructed();
  CHECK(run("validate " + pair) == 0);
  const auto report = read(scratch() / "validate.txt");
  CHECK(report.rfind("config.command: validate\n", 0) == 0);
  for (const char* key : {"so.margin_f", "ho.margin_f", "ee.mu", "ca: pass", "verdict: pass"}) {
    CHECK(report.find(key) != std::string::npos);
  }
}

TEST_CASE("validate rejects the base pair") {
  const auto [f, g] = base_pair();
  const fs::path path = scratch() / "base.json";
  std::ofstream(path) << write_pair_file(PairFile{f, g, "{\"hole_seed\": [0.3, 0.36]}"});
  CHECK(run("validate " + path.string()) == 1);
  CHECK(read(scratch() / "validate.txt").find("class_a: fail") != std::string::npos);
}

TEST_CASE("usage and IO errors exit with 2") {
  CHECK(run("validate /nonexistent/pair.json") == 2);
  CHECK(run("") == 2);
  CHECK(run("orbit " + constructed() + " --depth -3") == 2);
  CHECK(run("gaps " + constructed()) == 2);
  CHECK(run("gaps " + constructed() + " --lo 0.4 --hi 0.3") == 2);
  CHECK(run("appendix --lambda 2") == 2);
  const fs::path junk = scratch() / "junk.json";
  std::ofstream(junk) << "{ not json";
  CHECK(run("validate " + junk.string()) == 2);
}

TEST_CASE("artifacts") {
  const auto& pair = constructed();
  CHECK(run("orbit " + pair + " --depth 8") == 0);
  CHECK(fs::file_size(scratch() / "orbit.csv") > 0);
  CHECK(run("minimal-set " + pair + " --depth 10 --resolution 1e-3") == 0);
  CHECK(read(scratch() / "cover.csv").find(',') != std::string::npos);
  CHECK(run("gaps " + pair + " --lo 0.2 --hi 0.21") == 0);
  CHECK(read(scratch() / "gap_trace.txt").find("output") != std::string::npos);
  CHECK(run("gaps " + pair + " --certify --resolution 0.02 --depth 10 --verify-depth 14") == 0);
  CHECK(read(scratch() / "gaps.csv").rfind("lo,hi,status", 0) == 0);
  CHECK(run("appendix --n-max 12") == 0);
  CHECK(read(scratch() / "appendix.csv").rfind("n,measure,bound\n0,", 0) == 0);

  CHECK(run("plot " + pair) == 0);
  const auto first = read(scratch() / "pair.svg");
  CHECK(run("plot " + pair) == 0);
  CHECK(read(scratch() / "pair.svg") == first);
  CHECK(first.find("class=\"Hf\"") != std::string::npos);
}
