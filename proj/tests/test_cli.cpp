#include "isoconv/catalog.hpp"
#include "isoconv/cli.hpp"
#include "isoconv/convexity_lab.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using isoconv::cli::run;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "isoconv_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json strip_run_fields(Json j) {
  j["config"].erase("threads");
  if (j.contains("stats")) j["stats"].erase("wall_ms");
  return j;
}

}  // namespace

TEST_CASE("eval-f") {
  const auto r = invoke({"eval-f", "--x", "1/6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.8164965809") != std::string::npos);
  CHECK(r.out.find("k=2") != std::string::npos);

  const auto j = Json::parse(invoke({"eval-f", "--x", "0.5", "--format", "json"}).out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["x"] == "1/2");
  CHECK(j["value"].get<double>() == 1.0);
  CHECK(j["config"]["subcommand"] == "eval-f");

  const auto bad = invoke({"eval-f", "--x", "2"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("example:") != std::string::npos);
  CHECK(invoke({"eval-f", "--x", "one"}).code == 2);
}

TEST_CASE("beta") {
  const auto r = invoke({"beta", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1/4") != std::string::npos);
  CHECK(invoke({"beta", "--k", "-1"}).code == 2);
}

TEST_CASE("counterexample-s3") {
  const auto r = invoke({"counterexample-s3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("2 < 2.4494897", 0) == 0);
}

TEST_CASE("usage errors name the problem and give an example") {
  const auto none = invoke({});
  CHECK(none.code == 2);
  const auto unknown = invoke({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("frobnicate") != std::string::npos);
  const auto missing = invoke({"profile", "--group", "Z4"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--s") != std::string::npos);
  CHECK(missing.err.find("example: isoconv profile") != std::string::npos);
  const auto bad_flag = invoke({"beta", "--k", "1", "--bogus"});
  CHECK(bad_flag.code == 2);
  CHECK(bad_flag.err.find("--bogus") != std::string::npos);
  CHECK(invoke({"profile", "--group", "Q8", "--s", "1"}).code == 2);
  CHECK(invoke({"check-class", "--fn", "builtin:F", "--class", "G", "--n", "8"}).code == 2);
  CHECK(invoke({"eval-f", "--x", "1/6", "--format", "xml"}).code == 2);
}

TEST_CASE("estimate-sup csv round-trips through check-class") {
  const fs::path csv = scratch("sup.csv");
  const auto r = invoke({"estimate-sup", "--p", "1", "--n", "8", "--csv", csv.string()});
  REQUIRE(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("i,x,value\n0,0/8,0\n", 0) == 0);
  CHECK(text.find("\n8,8/8,0\n") != std::string::npos);

  const fs::path report = scratch("sup_report.json");
  const auto c = invoke({"check-class", "--fn", csv.string(), "--class", "F", "--report", report.string()});
  CHECK(c.code == 0);
  const Json j = Json::parse(slurp(report));
  CHECK(j["N"] == 8);
  CHECK(j["arithmetic"] == "float");
  CHECK(j["violations"].empty());

  CHECK(invoke({"check-class", "--fn", csv.string(), "--class", "F", "--n", "16"}).code == 2);
  CHECK(invoke({"check-class", "--fn", scratch("missing.csv").string(), "--class", "F"}).code == 2);
}

TEST_CASE("estimate-sup reports non-convergence") {
  const auto r = invoke({"estimate-sup", "--p", "1", "--n", "64", "--max-iters", "1"});
  CHECK(r.code == 1);
}

TEST_CASE("check-class reports") {
  const fs::path report = scratch("tent.json");
  const auto r = invoke({"check-class", "--fn", "builtin:tent:1/4,0.85", "--class", "F0", "--n", "8", "--report",
                         report.string()});
  CHECK(r.code == 1);
  const Json j = Json::parse(slurp(report));
  CHECK(j["class"] == "F0");
  CHECK(j["arithmetic"] == "exact");
  CHECK(j["input"] == "builtin:tent:1/4,0.85");
  bool has_sharp = false;
  for (const auto& v : j["violations"]) {
    CHECK(v["slack"].get<double>() < 0);
    CHECK(v["slack"].get<double>() >= j["max_slack"].get<double>());
    has_sharp |= v["a"] == 0 && v["b"] == 2 && v["c"] == 4;
  }
  CHECK(has_sharp);

  CHECK(invoke({"check-class", "--fn", "builtin:F", "--class", "F0", "--n", "32"}).code == 0);
  CHECK(invoke({"check-class", "--fn", "builtin:parabola", "--class", "strong", "--n", "32"}).code == 0);
  CHECK(invoke({"check-class", "--fn", "builtin:F", "--class", "Fm:3", "--n", "24", "--samples", "2000"}).code == 0);
  CHECK(invoke({"check-class", "--fn", "builtin:tent:1/2,1.1", "--class", "F0", "--n", "8"}).code == 1);
}

TEST_CASE("profile output formats") {
  const auto text = invoke({"profile", "--group", "Z2xZ2xZ2", "--s", "basis"});
  CHECK(text.code == 0);

  const auto json = invoke({"profile", "--group", "Z2xZ2xZ2", "--s", "basis", "--format", "json"});
  const Json j = Json::parse(json.out);
  CHECK(j["m"] == 2);
  CHECK(j["entries"][4]["ratio"].get<double>() == doctest::Approx(1.0));
  CHECK(j["entries"][0]["ratio"] == "inf");
  CHECK(j["config"]["params"]["group"] == "Z2xZ2xZ2");

  const auto csv = invoke({"profile", "--group", "Z4", "--s", "1", "--format", "csv"});
  CHECK(csv.out.rfind("group,S,n,min_boundary,bound,ratio,witness,wall_ms,status\n", 0) == 0);
  CHECK(csv.out.find("Z4,1,2,1,1,1,0x3,") != std::string::npos);

  const auto weaker = Json::parse(invoke({"profile", "--group", "Z6", "--s", "1", "--m", "8", "--format", "json"}).out);
  CHECK(weaker["m"] == 8);
  CHECK(invoke({"profile", "--group", "Z6", "--s", "1", "--m", "3"}).code == 2);
}

TEST_CASE("non-generating connection sets warn but do not fail") {
  const auto r = invoke({"profile", "--group", "Z6", "--s", "2", "--format", "json"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["generating"] == false);
  CHECK_FALSE(j["warnings"].empty());
}

TEST_CASE("reports are identical across thread counts") {
  for (const char* threads : {"1", "2", "4"}) {
    const auto base = Json::parse(invoke({"profile", "--group", "Z4xZ4", "--s", "(1,0),(0,1),(1,1)", "--format",
                                          "json", "--threads", "1"}).out);
    const auto other = Json::parse(invoke({"profile", "--group", "Z4xZ4", "--s", "(1,0),(0,1),(1,1)", "--format",
                                           "json", "--threads", threads}).out);
    CHECK(strip_run_fields(base).dump() == strip_run_fields(other).dump());
  }
  const auto a = Json::parse(invoke({"check-class", "--fn", "builtin:F", "--class", "Fm:4", "--n", "24", "--samples",
                                     "500", "--seed", "7", "--threads", "1", "--format", "json"}).out);
  const auto b = Json::parse(invoke({"check-class", "--fn", "builtin:F", "--class", "Fm:4", "--n", "24", "--samples",
                                     "500", "--seed", "7", "--threads", "3", "--format", "json"}).out);
  CHECK(strip_run_fields(a).dump() == strip_run_fields(b).dump());
  CHECK(a["config"]["seed"] == 7);
}

TEST_CASE("verify-catalog") {
  const fs::path out = scratch("results.csv");
  const auto r = invoke({"verify-catalog", "--out", out.string()});
  CHECK(r.code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find(",violation\n") == std::string::npos);
  CHECK(csv.find(",non-abelian\n") != std::string::npos);

  const fs::path bad = scratch("bad_catalog.json");
  std::ofstream(bad) << R"({"entries": [{"name": "x", "group": "Z4"}]})";
  CHECK(invoke({"verify-catalog", "--catalog", bad.string()}).code == 2);
}

TEST_CASE("shipped catalog file matches the built-in catalog") {
  const auto loaded = isoconv::load_catalog(fs::path(ISOCONV_DATA_DIR) / "catalog.json");
  CHECK(isoconv::catalog_to_json(loaded) == isoconv::catalog_to_json(isoconv::default_catalog()));
}
