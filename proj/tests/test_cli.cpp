#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "virlab/cli.hpp"
#include "virlab/io.hpp"

using namespace virlab;
using namespace virlab::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("virlab_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("parse_cli examples") {
  const auto a = parse_cli({"coeffs", "--K", "12", "--eta", "0.5", "--mode", "exact"});
  CHECK(a.command == Command::coeffs);
  CHECK(a.K == 12);
  CHECK(a.eta == Rat(1, 2));
  CHECK(a.mode == Mode::exact);
  CHECK(a.epsilon == Rat(1, 2));

  const auto b = parse_cli({"bounds", "--curve", "kappa", "--grid", "0:1:0.001"});
  CHECK(b.command == Command::bounds);
  CHECK(b.curve == "kappa");
  const auto pts = b.grid->points();
  CHECK(pts.size() == 1001);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 1.0);

  const auto c = parse_cli({"invert", "--from", "beta", "--input", "file.csv", "--K", "10"});
  CHECK(c.command == Command::invert);
  CHECK(c.from == "beta");
  CHECK(c.input == fs::path("file.csv"));
  CHECK(c.K == 10);

  CHECK(parse_cli({"mayer", "--epsilon", "3/7"}).epsilon == Rat(3, 7));
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse_grid("0:1"), UsageError);
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), UsageError);
  CHECK_THROWS_AS(parse_grid("0:1:0"), UsageError);
  CHECK_THROWS_AS(parse_cli({"coeffs", "--K", "0"}), UsageError);
  CHECK_THROWS_AS(parse_cli({"coeffs", "--epsilon", "-1/2"}), UsageError);
  CHECK_THROWS_AS(parse_cli({"coeffs", "--mode", "fuzzy"}), UsageError);
  CHECK_THROWS_AS(parse_cli({"coeffs", "--eta", "0.5", "--t", "1"}), UsageError);

  const auto unknown = invoke({"frobnicate"});
  CHECK(unknown.code == 2);
  for (const auto& name : command_names()) CHECK(unknown.err.find(name) != std::string::npos);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"coeffs", "--no-such-flag"}).code == 2);
  CHECK(invoke({"bounds", "--curve", "nonsense"}).code == 2);
}

TEST_CASE("engine errors exit with code 1 and the error name") {
  const auto r = invoke({"bounds", "--curve", "lp", "--kappa", "0.5"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("DegenerateParams: ", 0) == 0);
  const auto missing = invoke({"invert", "--from", "b", "--input", "/nonexistent/b.csv"});
  CHECK(missing.code == 1);
}

TEST_CASE("help carries the formula map") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Formula map") != std::string::npos);
  CHECK(r.out.find("kappa(eta)") != std::string::npos);
  const auto sub = invoke({"mayer", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("(k+1)^k/(k+1)!") != std::string::npos);
}

TEST_CASE("exact coefficients as JSON") {
  const auto r = invoke({"coeffs", "--K", "3", "--mode", "exact", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "delta");
  const auto& cs = j["coefficients"];
  REQUIRE(cs.size() == 3);
  CHECK(cs[2]["index"] == 3);
  // -(1-η)(1 - 2η - η²/2) = -1 + 3η - (3/2)η² - (1/2)η³
  const std::map<int, std::pair<std::string, std::string>> expect{
      {0, {"-1", "1"}}, {1, {"3", "1"}}, {2, {"-3", "2"}}, {3, {"-1", "2"}}};
  const auto& terms = cs[2]["expr"]["terms"];
  REQUIRE(terms.size() == expect.size());
  for (const auto& t : terms) {
    const int a = t["a"];
    CHECK(t["m"] == 0);
    CHECK(t["num"] == expect.at(a).first);
    CHECK(t["den"] == expect.at(a).second);
  }
  const EtaExpr back = eta_from_json(cs[2]["expr"]);
  const EtaExpr eta = EtaExpr::eta();
  CHECK(back == -(EtaExpr::lambda() * (EtaExpr(1) - eta * Rat(2) - eta * eta * Rat(1, 2))));
}

TEST_CASE("exact values at a rational eta and float trajectories") {
  const auto r = invoke({"coeffs", "--K", "3", "--eta", "1/2"});
  REQUIRE(r.code == 0);
  // δ₃(1/2) = -(1/2)(1 - 1 - 1/8)
  CHECK(r.out == "index,value\n1,-1/1\n2,-1/2\n3,1/16\n");

  // The float engine at η = 1/2 agrees with the exact values.
  const auto f = invoke({"coeffs", "--K", "3", "--eta", "1/2", "--mode", "float"});
  REQUIRE(f.code == 0);
  const auto rows = csv_rows(f.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"k", "t", "eta", "value_kind", "value"});
  CHECK(std::stod(rows[3][4]) == doctest::Approx(1.0 / 16).epsilon(1e-11));
  CHECK(std::stod(rows[3][2]) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("invert round trip through files") {
  const auto dir = scratch("invert");
  fs::create_directories(dir);
  {
    std::ofstream(dir / "beta.csv") << "index,value\n1,-1/3\n2,2/5\n3,-7/4\n4,1/9\n";
  }
  REQUIRE(invoke({"invert", "--from", "beta", "--input", (dir / "beta.csv").string(), "--K", "4",
                  "--out", (dir / "b.csv").string()})
              .code == 0);
  const auto back = invoke({"invert", "--from", "b", "--input", (dir / "b.csv").string(), "--K", "4"});
  REQUIRE(back.code == 0);
  CHECK(back.out == "index,value\n1,-1/3\n2,2/5\n3,-7/4\n4,1/9\n");
  fs::remove_all(dir);
}

TEST_CASE("figures are complete and byte-identical across runs") {
  const auto a = scratch("fig_a"), b = scratch("fig_b");
  REQUIRE(invoke({"figures", "--out", a.string()}).code == 0);
  setenv("VIRIAL_LAB_THREADS", "1", 1);
  CHECK(thread_budget() == 1);
  REQUIRE(invoke({"figures", "--out", b.string()}).code == 0);
  unsetenv("VIRIAL_LAB_THREADS");
  const std::vector<std::string> files{"fig_kappa.csv", "fig3.csv", "fig5.csv", "figL.csv", "fig1.csv",
                                       "fig2.csv",      "fig6.csv", "fig7.csv", "figq.csv",
                                       "figures.meta.json"};
  for (const auto& f : files) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  int csvs = 0;
  for (const auto& e : fs::directory_iterator(a)) csvs += e.path().extension() == ".csv";
  CHECK(csvs == 9);

  const auto circles = csv_rows(slurp(a / "fig1.csv"));
  CHECK(circles[0] == std::vector<std::string>{"radius", "theta", "re", "im"});

  // q_k/λ^k = (-1)^k c_k: the magnitude decreases in t and tends to 1.
  const auto q = csv_rows(slurp(a / "figq.csv"));
  CHECK(q[0] == std::vector<std::string>{"k", "t", "eta", "value_kind", "value"});
  std::map<int, std::vector<double>> series;
  for (std::size_t i = 1; i < q.size(); ++i) series[std::stoi(q[i][0])].push_back(std::stod(q[i][4]));
  for (const auto& [k, vals] : series) {
    CAPTURE(k);
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(std::abs(vals[i]) <= std::abs(vals[i - 1]) + 1e-15);
    for (double v : vals) CHECK((k % 2 == 0 ? v > 0 : v < 0));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("selftest reports eleven criteria and its exit code follows them") {
  const auto dir = scratch("selftest");
  const auto r = invoke({"selftest", "--out", dir.string()});
  const auto lines = csv_rows(r.out);
  REQUIRE(lines.size() == 11);
  bool all = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i][0];
    CHECK((line.rfind("PASS", 0) == 0 || line.rfind("FAIL", 0) == 0));
    CHECK(line.find("criterion " + std::to_string(i + 1) + " ") != std::string::npos);
    all = all && line.rfind("PASS", 0) == 0;
  }
  CHECK(r.code == (all ? 0 : 1));
  fs::remove_all(dir);
}
