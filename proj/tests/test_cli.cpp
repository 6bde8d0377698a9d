// Drives the command-line tool as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(AFFDISCORD_CLI) + " " + args + " 2>/dev/null";
  Run result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

Run run_stderr(const std::string& args) {
  const std::string cmd = std::string(AFFDISCORD_CLI) + " " + args + " 2>&1 >/dev/null";
  Run result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

class Scratch {
 public:
  Scratch()
      : dir_(fs::temp_directory_path() / ("affdiscord_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string write_file(const Scratch& s, const std::string& name, const std::string& text) {
  const std::string p = s.path(name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("compute on generated family states") {
  Scratch s;
  REQUIRE(run("state --family werner2 --param 1 --out " + s.path("w1.json")).status == 0);
  auto r = run("compute --state " + s.path("w1.json") + " --measure affinity");
  REQUIRE(r.status == 0);
  auto report = json::parse(r.out);
  CHECK(report["value"].get<double>() == doctest::Approx(0.5));
  CHECK(report["method"] == "closed-2xn");
  CHECK(report["diagnostics"]["purity"].get<double>() == doctest::Approx(1.0));
  CHECK(report["diagnostics"]["schmidt_spectrum"].size() == 2);

  REQUIRE(run("state --family werner2 --param 0.5 --out " + s.path("w.json")).status == 0);
  r = run("compute --state " + s.path("w.json") + " --measure all");
  REQUIRE(r.status == 0);
  report = json::parse(r.out);
  CHECK(report["method"] == "closed-2xn");
  CHECK(report["value"].get<double>() == doctest::Approx(0.25 * (1.5 - std::sqrt(1.25))));
  CHECK(report["measures"]["hs"]["value"].get<double>() == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(report["measures"]["hs"]["method"] == "optimized-local");
  CHECK(report["measures"]["remedied"]["value"].get<double>() ==
        doctest::Approx(report["value"].get<double>()));
  CHECK_FALSE(report["diagnostics"].contains("schmidt_spectrum"));
  CHECK(report["seed"] == 1);

  r = run("compute --state " + s.path("w.json") + " --method optimize");
  CHECK(json::parse(r.out)["value"].get<double>() ==
        doctest::Approx(0.25 * (1.5 - std::sqrt(1.25))).epsilon(1e-6));

  REQUIRE(run("state --family werner --m 3 --param 0.2 --out " + s.path("w3.json")).status == 0);
  r = run("compute --state " + s.path("w3.json") + " --format csv");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("measure,value,method,evaluations\naffinity,0.0035898384", 0) == 0);
  r = run("compute --state " + s.path("w3.json") + " --method closed");
  CHECK(r.status == 3);
  REQUIRE(run("state --family werner --m 3 --param 0.9 --out " + s.path("w9.json")).status == 0);
  r = run("compute --state " + s.path("w9.json") + " --method optimize");
  REQUIRE(r.status == 0);
  // 0.5 * ((3 - 0.9) / 4 - sqrt(0.5 * 0.19))
  const double analytic = 0.5 * (2.1 / 4.0 - std::sqrt(0.5 * 0.19));
  CHECK(std::abs(json::parse(r.out)["value"].get<double>() - analytic) < 1e-4);

  r = run("compute --state " + s.path("w3.json") + " --method bound");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["method"] == "bound");
}

TEST_CASE("product and pure-state files") {
  Scratch s;
  const std::string product = write_file(s, "prod.json", R"({"dim_a": 2, "dim_b": 2, "matrix": [
      [{"re": 0.25, "im": 0}, {"re": 0.25, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}],
      [{"re": 0.25, "im": 0}, {"re": 0.25, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}],
      [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0.25, "im": 0}, {"re": 0.25, "im": 0}],
      [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0.25, "im": 0}, {"re": 0.25, "im": 0}]]})");
  auto r = run("compute --state " + product);
  REQUIRE(r.status == 0);
  CHECK(std::abs(json::parse(r.out)["value"].get<double>()) < 1e-12);

  REQUIRE(run("state --family random --dim-a 3 --dim-b 3 --rank 1 --seed 12 --out " +
              s.path("pure.json")).status == 0);
  const auto automatic = json::parse(run("compute --state " + s.path("pure.json")).out);
  const auto optimized =
      json::parse(run("compute --state " + s.path("pure.json") + " --method optimize").out);
  CHECK(automatic["method"] == "closed-pure");
  CHECK(optimized["method"] == "optimized-local");
  CHECK(std::abs(automatic["value"].get<double>() - optimized["value"].get<double>()) < 1e-5);
  CHECK(automatic["diagnostics"]["schmidt_spectrum"].size() == 3);
}

TEST_CASE("output is byte-identical across runs") {
  Scratch s;
  REQUIRE(run("state --family random --dim-a 3 --dim-b 2 --rank 3 --seed 4 --out " +
              s.path("r.json")).status == 0);
  const auto a = run("compute --state " + s.path("r.json") + " --measure all --seed 9");
  const auto b = run("compute --state " + s.path("r.json") + " --measure all --seed 9");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);

  const auto v1 = run("verify --only 4,7 --seed 7");
  const auto v2 = run("verify --only 4,7 --seed 7");
  CHECK(v1.status == 0);
  CHECK(v1.out == v2.out);
  std::istringstream lines(v1.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto check = json::parse(line);
    CHECK(check["passed"] == true);
    ++count;
  }
  CHECK(count == 2);
}

TEST_CASE("an impossible optimizer tolerance fails verification") {
  // Optimizer gaps sit near 1e-15, so only a sub-roundoff tolerance is unattainable.
  const auto r = run("verify --only 3,5 --tol-optimizer 1e-300");
  CHECK(r.status == 1);
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) CHECK(json::parse(line)["passed"] == false);
}

TEST_CASE("invalid input is reported with a reason") {
  Scratch s;
  const std::string bad = write_file(s, "bad.json", R"({"dim_a": 2, "dim_b": 1, "matrix": [
      [{"re": 1, "im": 0}, {"re": 0, "im": 0}],
      [{"re": 0, "im": 0}, {"re": 1, "im": 0}]]})");
  auto r = run_stderr("compute --state " + bad);
  CHECK(r.status == 2);
  CHECK(json::parse(r.out)["error"] == "NotUnitTrace");
  // The same file passes once the trace tolerance is loosened.
  CHECK(run("compute --state " + bad + " --tol-trace 2").status == 0);

  r = run_stderr("compute --state " + write_file(s, "junk.json", "{oops"));
  CHECK(r.status == 2);
  CHECK(json::parse(r.out)["error"] == "ParseError");

  CHECK(run("compute --state " + bad + " --measure fidelity").status == 2);
  CHECK(run("sweep --family ghz").status == 2);
  CHECK(run("sweep --family werner2 --from 1 --to 0").status == 2);
  CHECK(run("").status == 2);
}

TEST_CASE("unsupported dimensions exit with code 3") {
  Scratch s;
  std::ostringstream doc;
  doc << R"({"dim_a": 9, "dim_b": 1, "matrix": [)";
  for (int i = 0; i < 9; ++i) {
    doc << (i ? "," : "") << "[";
    for (int j = 0; j < 9; ++j) {
      doc << (j ? "," : "") << R"({"re": )" << (i == j ? "0.1111111111111111111" : "0")
          << R"(, "im": 0})";
    }
    doc << "]";
  }
  doc << "]}";
  const std::string path = write_file(s, "big.json", doc.str());
  const auto r = run_stderr("compute --state " + path + " --method optimize");
  CHECK(r.status == 3);
  CHECK(json::parse(r.out)["error"] == "UnsupportedDimension");
}

TEST_CASE("sweep output") {
  const auto r = run("sweep --family werner2 --from -0.3333333333333333 --to 1 --steps 41 --measure all");
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "family,param,measure,analytic,optimized,gap");
  int rows = 0;
  std::string last;
  while (std::getline(lines, line)) {
    ++rows;
    last = line;
    const double gap = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(gap < 1e-5);
  }
  CHECK(rows == 82);
  CHECK(last.rfind("werner2,1,hs,0.5,", 0) == 0);

  // p = 0 sits at grid index 10 when the grid starts exactly at -1/3.
  std::istringstream again(r.out);
  for (int i = 0; i <= 21; ++i) std::getline(again, line);
  CHECK(line.rfind("werner2,", 0) == 0);
  const std::string p0 = line.substr(8, line.find(',', 8) - 8);
  CHECK(std::abs(std::stod(p0)) < 1e-12);
  for (int k = 0; k < 2; ++k) {
    std::istringstream fields(line);
    std::string field;
    for (int c = 0; c < 4; ++c) std::getline(fields, field, ',');
    CHECK(std::abs(std::stod(field)) < 1e-9);
    std::getline(again, line);
  }

  const auto spec_grid = run("sweep --family werner2 --from -0.3333 --to 1 --steps 41 --measure all");
  REQUIRE(spec_grid.status == 0);
  CHECK(std::count(spec_grid.out.begin(), spec_grid.out.end(), '\n') == 83);

  const auto j = run("sweep --family isotropic --m 3 --from 0.2 --to 0.6 --steps 2 --format json");
  REQUIRE(j.status == 0);
  const auto doc = json::parse(j.out);
  CHECK(doc.size() == 4);
  CHECK(doc[0]["family"] == "isotropic");
}
