#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = oco::cli::parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("oco_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("toy run writes files") {
  const fs::path dir = scratch("toy");
  const Run r = run({"toy", "--horizon", "8000", "--seed", "7", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "toy_clipped_seed7.csv"));
  CHECK(fs::exists(dir / "toy_mahdavi_seed7.csv"));
  CHECK(fs::exists(dir / "toy_summary.csv"));
}

TEST_CASE("missing demand file is an io error") {
  const Run r = run({"dispatch", "--demand", scratch("nothing").string() + "/missing.csv"});
  CHECK(r.code == 3);
}

TEST_CASE("out-of-range beta is a usage error") {
  CHECK(run({"toy", "--beta", "1.5"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"nope"}).code == 2);
  CHECK(run({"toy", "--horizon", "abc"}).code == 2);
  CHECK(run({"toy", "--algos", "strong"}).code == 2);
  CHECK(run({"toy", "--demand", "x.csv"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("flags override the config file") {
  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "# toy settings\nhorizon = 50\nseed = 4\nout = " << (dir / "cfg_out").string()
                                 << "\nalgos = clipped\n";
  const Run r = run({"toy", "--config", (dir / "run.cfg").string(), "--seed", "9"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "cfg_out" / "toy_clipped_seed9.csv"));
  CHECK_FALSE(fs::exists(dir / "cfg_out" / "toy_mahdavi_seed9.csv"));

  std::ofstream(dir / "bad.cfg") << "horizon = 50\nwhatever = 1\n";
  CHECK(run({"toy", "--config", (dir / "bad.cfg").string()}).code == 2);
  CHECK(run({"toy", "--config", (dir / "absent.cfg").string()}).code == 3);
}

TEST_CASE("dispatch with a demand file") {
  const fs::path dir = scratch("demand");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "demand.csv");
    f << "t,demand\n";
    for (int t = 1; t <= 100; ++t) f << t << "," << 20 + (t % 7) << "\n";
  }
  const Run r = run({"dispatch", "--demand", (dir / "demand.csv").string(), "--out", (dir / "out").string()});
  CHECK(r.code == 0);
  std::ifstream in(dir / "out" / "dispatch_clipped_seed1.csv");
  int lines = 0;
  for (std::string s; std::getline(in, s);) ++lines;
  CHECK(lines == 101);
}

TEST_CASE("person-block pca stream") {
  const fs::path dir = scratch("pca");
  const Run r = run({"pca", "--segments", "20", "--horizon", "200", "--algos", "adaptive", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "pca_adaptive_seed1.csv"));
  CHECK(run({"toy", "--segments", "3"}).code == 2);
  CHECK(run({"pca", "--segments", "7", "--horizon", "200"}).code == 2);
}
