#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qwzeta/cli.hpp"

using namespace qwz;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Second line of a CSV dump, split on commas (no quoted fields expected).
std::vector<std::string> first_row(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::istringstream row(line);
  std::string f;
  while (std::getline(row, f, ',')) fields.push_back(f);
  return fields;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qwzeta_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("zeta subcommand") {
  const auto r = run({"zeta", "--method", "case1", "--d", "2", "--u", "0.5"});
  CHECK(r.code == cli::kExitOk);
  const auto row = first_row(r.out);
  REQUIRE(row.size() >= 7);
  CHECK(std::stod(row[6]) == doctest::Approx(0.1325825214724776).epsilon(1e-14));

  const auto direct = first_row(
      run({"zeta", "--method", "direct", "--d", "1", "--L", "6", "--marking", "explicit:0,3", "--u", "0.3"}).out);
  const auto thm = first_row(
      run({"zeta", "--method", "thm31-finite", "--d", "1", "--L", "6", "--marking", "explicit:0,3", "--u", "0.3"})
          .out);
  CHECK(std::stod(direct[6]) == doctest::Approx(std::stod(thm[6])).epsilon(1e-12));

  const auto zero = first_row(run({"zeta", "--method", "direct", "--d", "2", "--L", "4", "--marking", "half", "--u", "0"}).out);
  CHECK(zero[6] == "1");
}

TEST_CASE("zeta json output") {
  const auto r = run({"zeta", "--method", "case1", "--d", "1", "--u", "0.1,0.3+0.2i", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.size() == 2);
  CHECK(doc[1]["u_im"].get<double>() == 0.2);
  CHECK(doc[1]["flags"].get<std::string>() == "branch-sensitive");
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run({}).code == cli::kExitConfigError);
  CHECK(run({"bogus"}).code == cli::kExitConfigError);
  CHECK(run({"zeta", "--method", "nope", "--u", "0.5"}).code == cli::kExitConfigError);
  CHECK(run({"zeta", "--method", "closed-case2", "--d", "1", "--L", "6", "--marking", "explicit:0,3", "--u", "0.3"})
            .code == cli::kExitConfigError);
  CHECK(run({"zeta", "--method", "direct", "--d", "1", "--L", "2", "--marking", "none", "--u", "0"}).code ==
        cli::kExitConfigError);
  CHECK(run({"zeta", "--method", "direct", "--d", "1", "--L", "5", "--marking", "checkerboard", "--u", "0.1"}).code ==
        cli::kExitConfigError);
  CHECK(run({"zeta", "--method", "case1", "--u", "abc"}).code == cli::kExitConfigError);
  CHECK(run({"figure1", "--u", "0,0.5"}).code == cli::kExitConfigError);
  CHECK(run({"figure1", "--u", "0.5,1"}).code == cli::kExitConfigError);
  const auto budget = run({"verify", "--suite", "prop22", "--d", "2", "--L", "40"});
  CHECK(budget.code == cli::kExitConfigError);
  CHECK(budget.err.find("--max-dim") != std::string::npos);
  CHECK(budget.err.find('\n') == budget.err.size() - 1);
}

TEST_CASE("verify exit codes and report") {
  const auto ok = run({"verify", "--suite", "prop22", "--d", "1", "--L", "8"});
  CHECK(ok.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["pass"] == true);
  CHECK(doc["seed"] == 7);
  REQUIRE(doc["checks"].size() == 1);
  CHECK(doc["checks"][0]["max_residual"].get<double>() < 1e-9);

  const auto strict = run({"verify", "--suite", "case1", "--d", "2", "--L", "4", "--tol-det", "1e-30"});
  CHECK(strict.code == cli::kExitVerifyFailed);
  CHECK(nlohmann::json::parse(strict.out)["pass"] == false);

  const auto thm = run({"verify", "--suite", "thm31", "--L", "12", "--random-markings", "20", "--seed", "7"});
  CHECK(thm.code == cli::kExitOk);
  CHECK(run({"verify", "--suite", "thm31", "--d", "2"}).code == cli::kExitConfigError);
}

TEST_CASE("outputs are deterministic across runs and widths") {
  const std::vector<std::string> fig = {"figure1", "--d", "2", "--u", "0.1,0.4,0.8", "--points", "128"};
  const auto a = run(fig);
  auto wide = fig;
  wide.insert(wide.begin(), {"--threads", "3"});
  const auto b = run(wide);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("u,L_nonsearch,L_search,diff\r\n", 0) == 0);
  CHECK(a.err.find("non-decreasing: yes") != std::string::npos);

  const std::vector<std::string> ver = {"verify", "--suite", "prop22", "--d", "1", "--L", "7", "--seed", "3"};
  CHECK(run(ver).out == run(ver).out);
}

TEST_CASE("figure1 at d = 1 reproduces log(1 - u)") {
  const auto r = run({"figure1", "--d", "1", "--u", "0.3", "--points", "1024"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(first_row(r.out)[1]) == doctest::Approx(std::log(0.7)).epsilon(1e-9));
}

TEST_CASE("file outputs") {
  const auto csv = temp_path("fig.csv");
  const auto plot = temp_path("fig.gp");
  const auto r = run({"figure1", "--u", "0.2,0.6", "--points", "64", "--output", csv.string(), "--plot-script",
                      plot.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(csv).rfind("u,L_nonsearch", 0) == 0);
  CHECK(slurp(plot).find(csv.string()) != std::string::npos);
  std::filesystem::remove(csv);
  std::filesystem::remove(plot);

  const auto tri = temp_path("k.txt");
  CHECK(run({"export", "--matrix", "K", "--d", "1", "--L", "4", "--marking", "explicit:0", "--output", tri.string()})
            .code == 0);
  CHECK(slurp(tri).rfind("9 4 7\n", 0) == 0);
  std::filesystem::remove(tri);
  CHECK(run({"export", "--matrix", "Q", "--d", "1", "--L", "4"}).code == cli::kExitConfigError);
}

TEST_CASE("spectra subcommand") {
  const auto path = run({"spectra", "--path", "5"});
  REQUIRE(path.code == 0);
  std::istringstream in(path.out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) < 1e-12);
  }
  CHECK(rows == 5);
  const auto torus = run({"spectra", "--torus", "--d", "2", "--L", "4"});
  CHECK(std::count(torus.out.begin(), torus.out.end(), '\n') == 17);
  CHECK(std::stod(first_row(torus.out)[1]) == doctest::Approx(-4.0));
  const auto case2 = run({"spectra", "--case2", "--d", "2", "--N", "2"});
  CHECK(std::count(case2.out.begin(), case2.out.end(), '\n') == 9);
}

TEST_CASE("config file merging") {
  const auto merged = cli::merge_config({"zeta", "--d", "1"}, "d = 2\n# comment\nu = 0.5\n");
  CHECK(std::find(merged.begin(), merged.end(), "--u") != merged.end());
  CHECK(std::count(merged.begin(), merged.end(), "--d") == 1);

  const auto cfg = temp_path("run.cfg");
  {
    std::ofstream(cfg) << "d = 2\nu = 0.5\n";
  }
  const auto from_file = first_row(run({"--config", cfg.string(), "zeta", "--method", "case1"}).out);
  CHECK(from_file[1] == "2");
  const auto overridden = first_row(run({"--config", cfg.string(), "zeta", "--method", "case1", "--d", "1"}).out);
  CHECK(overridden[1] == "1");
  std::filesystem::remove(cfg);
  CHECK(run({"--config", "/nonexistent/qwzeta.cfg", "zeta", "--method", "case1", "--u", "0.5"}).code ==
        cli::kExitConfigError);
}
