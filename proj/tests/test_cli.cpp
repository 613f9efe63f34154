#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "bubble");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = bubble::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

} // namespace

TEST_CASE("graph command") {
  auto r = call({"graph", "--b", "2", "--level", "2"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["vertex_count"] == 12);
  CHECK(j["edge_multiplicity"] == 16);
  CHECK(j["degree_census"]["3"] == 10);

  r = call({"graph", "--b", "2", "--level", "0"});
  CHECK(json::parse(r.out)["vertex_count"] == 2);

  r = call({"graph", "--b", "1", "--level", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("branching") != std::string::npos);

  r = call({"graph", "--b", "3", "--level", "1", "--format", "csv"});
  const auto rows = csv_rows(r.out);
  CHECK(rows.front() == std::vector<std::string>{"u", "v", "multiplicity"});
  CHECK(rows.size() == 4);

  r = call({"graph", "--b", "2", "--level", "1", "--edges"});
  CHECK(json::parse(r.out)["edges"].size() == 3);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 1);
  CHECK(call({"nonsense"}).code == 1);
  CHECK(call({"spectrum", "--flavor", "robin"}).code == 1);
  CHECK(call({"spectrum", "--method", "guess"}).code == 1);
  CHECK(call({"graph", "--level", "-1"}).code == 1);
  CHECK(call({"gaps", "--scale", "0"}).code == 1);
  CHECK(call({"ids", "--measure", "other"}).code == 1);
  CHECK(call({"graph", "--help"}).code == 0);
}

TEST_CASE("spectrum command") {
  auto r = call({"spectrum", "--b", "2", "--level", "1", "--flavor", "dirichlet"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["entries"].size() == 2);
  CHECK(j["entries"][0]["value"].get<double>() == doctest::Approx(1.0 / 3));
  CHECK(j["entries"][1]["value"].get<double>() == doctest::Approx(5.0 / 3));
  CHECK(j["entries"][0]["multiplicity"] == 1);

  r = call({"spectrum", "--b", "3", "--level", "2", "--method", "both"});
  j = json::parse(r.out);
  CHECK(j["agree"] == true);
  CHECK(j["max_set_distance"].get<double>() < 1e-8);

  r = call({"spectrum", "--b", "2", "--level", "2", "--method", "oracle", "--flavor", "dirichlet"});
  j = json::parse(r.out);
  int total = 0;
  for (const auto &e : j["entries"]) total += e["multiplicity"].get<int>();
  CHECK(total == 10);

  r = call({"spectrum", "--b", "2", "--level", "2", "--method", "both", "--perturb", "1:1/100"});
  CHECK(json::parse(r.out)["agree"] == false);
}

TEST_CASE("ids command reproduces the finite staircase") {
  auto r = call({"ids", "--b", "4", "--level", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 243);
  CHECK(rows.front() == std::vector<std::string>{"x", "N", "num", "den"});
  double prev_x = -1.0, prev_n = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    const double n = std::stod(rows[i][1]);
    CHECK(x > prev_x);
    CHECK(n > prev_n);
    const auto q = bubble::make_rational(std::stoll(rows[i][2]), std::stoll(rows[i][3]));
    CHECK(bubble::to_double(q) == n);
    prev_x = x;
    prev_n = n;
  }
  CHECK(rows.back()[2] == "1");
  CHECK(rows.back()[3] == "1");

  r = call({"ids", "--b", "2", "--measure", "limit", "--depth", "3"});
  auto j = json::parse(r.out);
  CHECK(j["points"].size() == 80);
  CHECK(j["tail_bound"]["num"] == 81);
  CHECK(j["tail_bound"]["den"] == 256);

  r = call({"ids", "--b", "2", "--measure", "exact", "--level", "1"});
  j = json::parse(r.out);
  REQUIRE(j["points"].size() == 5);
  CHECK(j["points"][0]["N"]["num"] == 3);
  CHECK(j["points"][0]["N"]["den"] == 8);
}

TEST_CASE("gaps command") {
  auto r = call({"gaps", "--b", "2", "--scale", "1"});
  auto j = json::parse(r.out);
  REQUIRE(j["gaps"].size() == 2);
  CHECK(j["gaps"][0]["label_numerator"] == 3);
  CHECK(j["gaps"][0]["label_denominator"] == 8);
  CHECK(j["gaps"][1]["label_numerator"] == 5);

  r = call({"gaps", "--b", "2", "--scale", "2"});
  j = json::parse(r.out);
  REQUIRE(j["gaps"].size() == 6);
  for (std::size_t i = 1; i < 6; ++i) {
    CHECK(j["gaps"][i - 1]["interval"][1].get<double>() < j["gaps"][i]["interval"][0].get<double>());
    CHECK(j["gaps"][i - 1]["label_numerator"].get<int>() * j["gaps"][i]["label_denominator"].get<int>() <
          j["gaps"][i]["label_numerator"].get<int>() * j["gaps"][i - 1]["label_denominator"].get<int>());
  }
}

TEST_CASE("compact command") {
  auto r = call({"compact", "--b", "2", "--depth", "4"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["eigenvalues"][0]["value"] == 0.0);
  CHECK(j["eigenvalues"][1]["value"].get<double>() == doctest::Approx(2.0 * j["T2"].get<double>()));
  const auto &base = j["gaps"][0];
  CHECK(base["word"] == "0");
  CHECK(base["label"].get<double>() > 0.0);
  for (const auto &ratio : base["ratios"])
    CHECK(ratio.get<double>() == doctest::Approx(base["label"].get<double>()).epsilon(1e-8));
}

TEST_CASE("verify command") {
  auto r = call({"verify", "--b", "2", "--level", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);

  r = call({"verify", "--b", "2", "--level", "2", "--perturb", "2:1/1000"});
  CHECK(r.code == 2);
  CHECK(r.out.find("FAIL schur identity") != std::string::npos);
  CHECK(r.out.find("FAIL neumann oracle") != std::string::npos);

  r = call({"verify", "--b", "6", "--level", "5", "--no-oracle", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["passed"] == true);
}

TEST_CASE("output is deterministic and can go to a file") {
  const auto a = call({"compact", "--b", "3", "--depth", "3", "--scale", "2"});
  const auto b = call({"compact", "--b", "3", "--depth", "3", "--scale", "2"});
  CHECK(a.out == b.out);

  const auto path = std::filesystem::temp_directory_path() / "bubble_cli_test.json";
  const auto r = call({"gaps", "--b", "3", "--scale", "2", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == call({"gaps", "--b", "3", "--scale", "2"}).out);
  std::filesystem::remove(path);
}
