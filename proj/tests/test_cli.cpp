#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "etflab/cli.hpp"
#include "etflab/serialize.hpp"
#include "etflab/sphere.hpp"

namespace fs = std::filesystem;
using etflab::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "etflab");
  std::ostringstream out, err;
  const int code = etflab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "etflab_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

struct Csv {
  std::string provenance;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  return cells;
}

Csv read_csv(const fs::path& p) {
  std::ifstream in(p);
  Csv csv;
  std::getline(in, csv.provenance);
  std::string line;
  std::getline(in, line);
  csv.header = split(line);
  while (std::getline(in, line)) csv.rows.push_back(split(line));
  return csv;
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"optimize", "--n", "4"}).code == 1);
  CHECK(run({"optimize", "--n", "4", "--dim", "3", "--objective", "nope", "--out", scratch("e.json").string()}).code == 1);
  const auto bad = run({"optimize", "--n", "1", "--dim", "3", "--out", scratch("e.json").string()});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"report", "--in", scratch("missing.json").string(), "--out", scratch("e.json").string()}).code == 1);
  CHECK(run({"gegenbauer", "--d", "1", "--alpha", "1", "--kmax", "3", "--out", scratch("e.csv").string()}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numeric failures exit with 2") {
  const auto r = run({"vmf-check", "--alpha", "1", "--kappas", "2000", "--nodes", "32", "--out", scratch("v.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("numeric") != std::string::npos);
}

TEST_CASE("optimize writes a self-describing result") {
  const auto path = scratch("r.json");
  const auto r = run({"optimize", "--objective", "sym-ce", "--n", "4", "--dim", "3", "--alpha", "1.0", "--restarts", "20",
                      "--seed", "42", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
  const Json j = read_json(path);
  CHECK(j.at("spec").at("command") == "optimize");
  CHECK(j.at("spec").at("restarts") == 20);
  CHECK(j.at("spec").at("seed") == 42);
  CHECK(j.at("objective") == "sym-ce");
  CHECK(std::abs(j.at("best_loss").get<double>() - 4.0 * std::log(1.0 + 3.0 * std::exp(-4.0 / 3.0))) < 1e-7);
  CHECK(j.at("converged") == true);
  CHECK(j.at("diagnostics").at("etf_feasible") == true);
  CHECK(j.at("diagnostics").at("etf_distance").get<double>() < 1e-4);
  CHECK(j.at("trace").size() <= 1000);
  const auto c = etflab::config_from_json(j.at("config"));
  CHECK(c.n() == 4);
  CHECK(std::abs(etflab::etf_distance(c) - j.at("diagnostics").at("etf_distance").get<double>()) == 0.0);
}

TEST_CASE("infeasible ETF comparison is flagged, not an error") {
  const auto path = scratch("inf.json");
  REQUIRE(run({"optimize", "--n", "4", "--dim", "2", "--objective", "sym-ce", "--restarts", "2", "--out", path.string()}).code == 0);
  const Json j = read_json(path);
  CHECK(j.at("diagnostics").at("etf_feasible") == false);
  CHECK(j.at("diagnostics").at("etf_distance").is_null());

  const auto rep = scratch("inf_report.json");
  REQUIRE(run({"report", "--in", path.string(), "--alpha", "1", "--out", rep.string()}).code == 0);
  const Json k = read_json(rep);
  CHECK(k.at("etf_feasible") == false);
  CHECK(k.at("uniformity").is_null());
}

TEST_CASE("asym-ce and pair-exp objectives") {
  const auto a = scratch("asym.json");
  REQUIRE(run({"optimize", "--objective", "asym-ce", "--n", "5", "--dim", "8", "--restarts", "4", "--out", a.string()}).code == 0);
  const Json ja = read_json(a);
  CHECK(ja.contains("config_v"));
  CHECK(ja.at("diagnostics").at("min_uv_inner").get<double>() > 1.0 - 1e-4);

  const auto p = scratch("pe.json");
  REQUIRE(run({"optimize", "--objective", "pair-exp", "--n", "12", "--dim", "3", "--max-iters", "2000", "--out", p.string()}).code == 0);
  const Json jp = read_json(p);
  CHECK(jp.at("diagnostics").at("energy_gap").get<double>() >= -1e-9);
}

TEST_CASE("report on a bare configuration") {
  const auto in = scratch("etf.json");
  std::ofstream(in) << etflab::to_json(etflab::simplex_etf(4, 3)).dump();
  const auto out = scratch("etf_report.json");
  REQUIRE(run({"report", "--in", in.string(), "--alpha", "1", "--lmax", "6", "--out", out.string()}).code == 0);
  const Json j = read_json(out);
  CHECK(std::abs(j.at("energy").at("loss_sym").get<double>() - j.at("energy").at("lower_bound").get<double>()) < 1e-12);
  CHECK(j.at("etf_distance").get<double>() < 1e-10);
  CHECK(j.at("uniformity").at("moments").size() == 6);
  CHECK(std::abs(j.at("uniformity").at("frame_ratio").get<double>() - 1.0) < 1e-12);
}

TEST_CASE("gegenbauer table") {
  const auto path = scratch("c.csv");
  REQUIRE(run({"gegenbauer", "--d", "2", "--alpha", "1.0", "--kmax", "40", "--out", path.string()}).code == 0);
  const auto csv = read_csv(path);
  CHECK(csv.provenance.rfind("# etflab {", 0) == 0);
  CHECK(csv.header == std::vector<std::string>{"k", "b_k", "log_inv_bk_over_klogk"});
  REQUIRE(csv.rows.size() == 41);
  CHECK(std::stod(csv.rows[0][1]) == doctest::Approx(1.1752012).epsilon(1e-7));
  for (const auto& row : csv.rows) CHECK(std::stod(row[1]) > 0.0);
  CHECK(std::stod(csv.rows[35][2]) > 0.5);
}

TEST_CASE("taylor-check, vmf-check and gap-sweep tables") {
  const auto t = scratch("t.csv");
  REQUIRE(run({"taylor-check", "--n", "4", "--dim", "3", "--seed", "3", "--alphas", "0.1,0.05,0.025", "--out", t.string()}).code == 0);
  const auto tc = read_csv(t);
  CHECK(tc.header == std::vector<std::string>{"alpha", "exact", "taylor", "abs_err"});
  REQUIRE(tc.rows.size() == 3);
  CHECK(std::stod(tc.rows[2][3]) < std::stod(tc.rows[0][3]) / 8.0);

  const auto v = scratch("v.csv");
  REQUIRE(run({"vmf-check", "--alpha", "1", "--kappas", "0,1,5", "--nodes", "64", "--out", v.string()}).code == 0);
  const auto vc = read_csv(v);
  CHECK(vc.header == std::vector<std::string>{"kappa", "energy"});
  REQUIRE(vc.rows.size() == 3);
  CHECK(std::stod(vc.rows[0][1]) == doctest::Approx(std::log(std::sinh(1.0)) - 1.0).epsilon(1e-6));
  CHECK(std::stod(vc.rows[1][1]) > std::stod(vc.rows[0][1]));

  const auto g = scratch("g.csv");
  REQUIRE(run({"gap-sweep", "--dim", "3", "--alpha", "1", "--n-list", "10,20", "--restarts", "1", "--seed", "0", "--out", g.string()}).code == 0);
  const auto gc = read_csv(g);
  CHECK(gc.header == std::vector<std::string>{"n", "gap_random_mean", "gap_optimized"});
  REQUIRE(gc.rows.size() == 2);
  for (const auto& row : gc.rows) CHECK(std::stod(row[2]) < std::stod(row[1]));
}

TEST_CASE("the binary writes byte-identical files for identical invocations") {
  const std::string cli = ETFLAB_CLI_PATH;
  const auto a = scratch("det_a.json"), b = scratch("det_b.json");
  const std::string args = " optimize --n 6 --dim 3 --restarts 3 --seed 9 --max-iters 500 > /dev/null --out ";
  REQUIRE(std::system((cli + args + a.string()).c_str()) == 0);
  REQUIRE(std::system((cli + args + b.string()).c_str()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}
