#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "npweyl/cli.hpp"
#include "npweyl/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace npweyl;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = std::numbers::pi;
const fs::path kData = NPWEYL_TEST_DATA;

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "npweyl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("npweyl_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<fs::path> listing(const fs::path& dir) {
  std::vector<fs::path> names;
  for (const auto& entry : fs::directory_iterator(dir)) names.push_back(entry.path().filename());
  std::sort(names.begin(), names.end());
  return names;
}
}  // namespace

TEST_CASE("argument helpers") {
  CHECK(cli::parse_resolution("64x128") == std::pair{64, 128});
  CHECK_THROWS_AS(cli::parse_resolution("64"), ConfigError);
  CHECK_THROWS_AS(cli::parse_resolution("axb"), ConfigError);
  const FitWindow w = cli::parse_window("16:200");
  CHECK(w.j_min == 16);
  CHECK(w.j_max == 200);
  CHECK_THROWS_AS(cli::parse_window("200:16"), ConfigError);
  CHECK_THROWS_AS(cli::parse_window("0:16"), ConfigError);

  cli::RunConfig cfg;
  cfg.shape = "torus";
  cfg.R = 1.0;
  cfg.r = 2.0;
  CHECK_THROWS_AS(cli::validate(cfg), ConfigError);
  cfg.shape = "cube";
  CHECK_THROWS_AS(cli::validate(cfg), ConfigError);
  cfg = {};
  cfg.n_s = 3;
  cfg.n_t = 8;
  CHECK_THROWS_AS(cli::validate(cfg), ConfigError);
  cfg = {};
  cfg.rho = -1.0;
  CHECK_THROWS_AS(cli::validate(cfg), ConfigError);
}

TEST_CASE("geometry command") {
  TempDir dir;
  SUBCASE("sphere") {
    const Result r = run_cli({"geometry", "--shape", "sphere", "--rho", "1", "--res", "64x128", "--out", dir.str()});
    REQUIRE(r.code == 0);
    const auto doc = read_json(dir.path / "geometry.json");
    CHECK(std::abs(doc.at("predicted_weyl_constant").get<double>() - 0.25) <= 1e-6);
    CHECK(r.out.find("predicted_weyl_constant=") != std::string::npos);
    CHECK(read_json(dir.path / "quad.json").at("nodes").size() == 64 * 128);
  }
  SUBCASE("clifford") {
    REQUIRE(run_cli({"geometry", "--shape", "clifford", "--res", "64x64", "--out", dir.str()}).code == 0);
    const auto doc = read_json(dir.path / "geometry.json");
    CHECK(std::abs(doc.at("willmore_energy").get<double>() - 2 * kPi * kPi) <= 1e-8);
    CHECK(std::abs(doc.at("predicted_weyl_constant").get<double>() - std::sqrt(3 * kPi) / 8) <= 1e-8);
  }
  SUBCASE("signed and per-node densities") {
    REQUIRE(run_cli({"geometry", "--shape", "torus", "--res", "16x16", "--signed", "--weyl-density", "--out",
                     dir.str()})
                .code == 0);
    const auto doc = read_json(dir.path / "geometry.json");
    CHECK(doc.at("c_minus").get<double>() > 0.0);
    CHECK(doc.at("weyl_density").size() == 256);
  }
  SUBCASE("mesh input") {
    REQUIRE(run_cli({"geometry", "--shape", "mesh", "--mesh", (kData / "genus2.off").string(), "--out", dir.str()})
                .code == 0);
    CHECK(read_json(dir.path / "geometry.json").at("euler_characteristic") == -2);
  }
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run_cli({"geometry", "--shape", "torus", "--R", "1", "--r", "2", "--out", dir.str()}).code == 1);
  CHECK(run_cli({"geometry", "--shape", "sphere", "--res", "2x8", "--out", dir.str()}).code == 1);
  CHECK(run_cli({"geometry", "--bogus-flag"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
  const Result open = run_cli(
      {"spectrum", "--shape", "mesh", "--mesh", (kData / "icosahedron_open.off").string(), "--out", dir.str()});
  CHECK(open.code == 2);
  CHECK(open.err.find("boundary edge") != std::string::npos);
  CHECK(run_cli({"geometry", "--shape", "mesh:" + (kData / "nonmanifold.off").string(), "--out", dir.str()}).code ==
        2);
  CHECK(run_cli({"mobius", "--shape", "sphere", "--mobius", "invert:1,0,0,1", "--out", dir.str()}).code == 2);
  CHECK(run_cli({"sphere-exact", "--count", "0", "--out", dir.str()}).code == 1);
  // Nothing is left behind by the failures.
  CHECK(listing(dir.path).empty());
}

TEST_CASE("spectrum command on a small sphere") {
  TempDir dir;
  const Result r = run_cli({"spectrum", "--shape", "sphere", "--res", "12x24", "--window", "4:30", "--export-matrix",
                            "--out", dir.str()});
  REQUIRE(r.code == 0);
  const auto fit = read_json(dir.path / "fit.json");
  CHECK(fit.at("window") == nlohmann::json::array({4, 30}));
  CHECK(fit.at("predicted").get<double>() == doctest::Approx(0.25).epsilon(1e-10));
  for (const char* key : {"c", "slope", "rel_dev"}) CHECK(fit.contains(key));

  std::istringstream csv(slurp(dir.path / "spectrum.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "j,re,im,modulus,singular_value");
  int rows = 0;
  double first = 0.0;
  while (std::getline(csv, line)) {
    if (rows == 0) first = std::stod(line.substr(line.find(',') + 1));
    ++rows;
  }
  CHECK(rows == 288);
  CHECK(std::abs(first - 0.5) < 1e-12);
  CHECK(fs::file_size(dir.path / "matrix.bin") == 288u * 288u * 8u);
  CHECK(read_json(dir.path / "matrix.json").at("n") == 288);

  SUBCASE("reruns are bit-identical") {
    TempDir again;
    REQUIRE(run_cli({"spectrum", "--shape", "sphere", "--res", "12x24", "--window", "4:30", "--out", again.str()})
                .code == 0);
    CHECK(slurp(again.path / "spectrum.csv") == slurp(dir.path / "spectrum.csv"));
    CHECK(slurp(again.path / "fit.json") == slurp(dir.path / "fit.json"));
  }
  SUBCASE("window beyond the spectrum is a config error and leaves no files") {
    TempDir bad;
    CHECK(run_cli({"spectrum", "--shape", "sphere", "--res", "8x8", "--window", "4:500", "--out", bad.str()}).code ==
          1);
    CHECK(listing(bad.path).empty());
  }
}

TEST_CASE("sphere-exact command") {
  TempDir dir;
  REQUIRE(run_cli({"sphere-exact", "--count", "4", "--out", dir.str()}).code == 0);
  std::istringstream csv(slurp(dir.path / "sphere_exact.csv"));
  std::string line;
  std::getline(csv, line);
  std::vector<double> values;
  while (std::getline(csv, line)) values.push_back(std::stod(line.substr(line.find(',') + 1)));
  REQUIRE(values.size() == 4);
  CHECK(values[0] == 0.5);
  for (int i = 1; i < 4; ++i) CHECK(values[i] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  cli::RunConfig cfg;
  cfg.count = 10000;
  cfg.out_dir = dir.path;
  std::ostringstream sink;
  const std::vector<double> big = cli::cmd_sphere_exact(cfg, sink);
  CHECK(big.size() == 10000);
  CHECK(big.back() == doctest::Approx(1.0 / 398.0).epsilon(1e-15));
}

TEST_CASE("mobius command") {
  TempDir dir;
  SUBCASE("sphere inversion") {
    REQUIRE(run_cli({"mobius", "--shape", "sphere", "--res", "32x64", "--mobius", "invert:3,0,0,1", "--out",
                     dir.str()})
                .code == 0);
    const auto doc = read_json(dir.path / "mobius.json");
    const double w = doc.at("before").at("willmore_energy").get<double>();
    CHECK(std::abs(doc.at("delta_willmore").get<double>()) / w <= 1e-6);
    CHECK(doc.at("map") == "invert:3,0,0,1");
  }
  SUBCASE("pure scaling") {
    REQUIRE(run_cli({"mobius", "--shape", "torus", "--res", "32x32", "--mobius", "scale:2.5", "--out", dir.str()})
                .code == 0);
    const auto doc = read_json(dir.path / "mobius.json");
    CHECK(std::abs(doc.at("delta_willmore").get<double>()) <= 1e-10);
    CHECK(std::abs(doc.at("delta_area").get<double>()) > 1.0);
  }
  SUBCASE("random map is reproducible from the seed") {
    TempDir other;
    for (const auto& d : {dir.str(), other.str()}) {
      REQUIRE(run_cli({"mobius", "--shape", "torus", "--res", "16x16", "--mobius", "random", "--seed", "4", "--out", d})
                  .code == 0);
    }
    CHECK(slurp(dir.path / "mobius.json") == slurp(other.path / "mobius.json"));
  }
}

TEST_CASE("config file with CLI override") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.ini";
  {
    std::ofstream f(cfg);
    f << "shape=torus\nR=3\nr=0.5\nres=16x16\n";
  }
  const fs::path out = dir.path / "out";
  REQUIRE(run_cli({"geometry", "--config", cfg.string(), "--r", "1", "--out", out.string()}).code == 0);
  const double w = read_json(out / "geometry.json").at("willmore_energy").get<double>();
  CHECK(w == doctest::Approx(kPi * kPi * 9.0 / std::sqrt(8.0)).epsilon(1e-8));
}

TEST_CASE("installed binary reports exit codes") {
  const std::string bin = NPWEYL_CLI_BINARY;
  CHECK(WEXITSTATUS(std::system((bin + " geometry --shape torus --R 1 --r 2 >/dev/null 2>&1").c_str())) == 1);
  CHECK(WEXITSTATUS(std::system((bin + " sphere-exact --count 3 --out " +
                                 (fs::temp_directory_path() / "npweyl_cli_bin").string() + " >/dev/null 2>&1")
                                    .c_str())) == 0);
  fs::remove_all(fs::temp_directory_path() / "npweyl_cli_bin");
}
