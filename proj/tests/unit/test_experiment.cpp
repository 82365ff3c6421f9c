#include "doctest.h"

#include "../support/checks.hpp"

#include "khull/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

using namespace khull;
using doctest::Approx;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& tag) {
  const auto p = std::filesystem::temp_directory_path() / "khull_unit" / tag;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig config(const std::string& experiment, const std::string& text, const std::filesystem::path& out) {
  ExperimentConfig c = parse_config(text);
  c.experiment = experiment;
  c.output_dir = out.string();
  return c;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("config parsing") {
    const ExperimentConfig c = parse_config(
        R"({"experiment":"fvector-mc","body":{"kind":"ellipsoid","axes":[2,1]},"n":100,"replicates":7,"seed":9,"T":3,
            "out":"o","dump":2,"resolution":{"polar_directions":128,"inner_samples":500}})");
    CHECK(c.experiment == "fvector-mc");
    REQUIRE(c.body);
    CHECK(c.body->dim() == 2);
    CHECK(c.n == 100);
    CHECK(c.replicates == 7);
    CHECK(c.seed == 9);
    CHECK(c.truncation == 3.0);
    CHECK(c.output_dir == "o");
    CHECK(c.dump == 2);
    CHECK(c.resolution.polar_directions == 128);
    CHECK(c.resolution.inner_samples == 500);
    CHECK_NOTHROW(validate(c));
  }

  TEST_CASE("config errors") {
    const char* bad[] = {
        "not json",
        "[1,2]",
        R"({"body":{"kind":"ball","r":1,"center":[0,0]},"bogus":1})",
        R"({"experiment":"fvector-mc"})",
        R"({"body":{"kind":"ball","r":1,"center":[0,0]},"n":-3})",
        R"({"body":{"kind":"ball","r":1,"center":[0,0]},"seed":-1})",
        R"({"body":{"kind":"ball","r":1,"center":[0,0]},"T":0})",
        R"({"body":{"kind":"ball","r":1,"center":[0,0]},"resolution":{"nodes":3}})",
        R"({"body":{"kind":"cylinder","r":1}})",
        R"({"body":{"kind":"ball","r":-1,"center":[0,0]}})",
    };
    for (const char* text : bad) CHECK_THROWS_AS(parse_config(text), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  }

  TEST_CASE("validation") {
    const auto check_rejected = [](const std::string& experiment, const std::string& text) {
      ExperimentConfig c = parse_config(text);
      c.experiment = experiment;
      CHECK_THROWS_AS(validate(c), ConfigError);
      c.output_dir = scratch("rejected").string();
      CHECK(run(c, 1).exit_code == 2);
    };
    check_rejected("no-such-experiment", R"({"body":{"kind":"ball","r":1,"center":[0,0]},"n":5})");
    check_rejected("sample-hull", R"({"body":{"kind":"ellipsoid","axes":[2,1]},"n":5})");
    check_rejected("sample-hull", R"({"body":{"kind":"ball","r":1,"center":[0,0]}})");
    check_rejected("fvector-mc", R"({"body":{"kind":"ball","r":1,"center":[0,0]}})");
    check_rejected("convergence", R"({"body":{"kind":"ball","r":1,"center":[0,0]}})");
    check_rejected("zerocell-mc", R"({"body":{"kind":"ball","r":1,"dim":4}})");
    check_rejected("fvector-mc", R"({"body":{"kind":"ball","r":1,"center":[0,0]},"n":5,"resolution":{"polar_directions":4}})");
  }

  TEST_CASE("summaries") {
    const std::vector<ResultRow> rows{{0, 0, {1.0, 10.0}}, {1, 0, {2.0, 10.0}}, {2, 0, {3.0, 10.0}}, {3, 0, {6.0, 10.0}}};
    const auto s = summarize({"a", "b"}, rows);
    const StatisticSummary& a = s.at("a");
    CHECK(a.count == 4);
    CHECK(a.mean == Approx(3.0));
    // Sample variance of 1,2,3,6: (4+1+0+9)/3.
    CHECK(a.sd == Approx(std::sqrt(14.0 / 3.0)));
    CHECK(a.se == Approx(std::sqrt(14.0 / 3.0) / 2.0));
    CHECK(a.moments[1] == Approx((1 + 4 + 9 + 36) / 4.0));
    CHECK(a.moments[2] == Approx((1 + 8 + 27 + 216) / 4.0));
    CHECK(a.moments[3] == Approx((1 + 16 + 81 + 1296) / 4.0));
    CHECK(s.at("b").sd == 0.0);
    CHECK_THROWS_AS(summarize({"a"}, std::vector<ResultRow>{}), ArgumentError);
  }

  TEST_CASE("replicate runner keeps index order and counts exclusions") {
    for (unsigned threads : {1u, 3u}) {
      const ResultTable t = run_replicates({"x"}, 50, 17, 100, threads, [](std::size_t i, std::uint64_t seed) -> std::optional<ResultRow> {
        if (i % 7 == 3) return std::nullopt;
        return ResultRow{i, seed, {double(i)}};
      });
      CHECK(t.rows.size() + t.excluded == 50);
      CHECK(t.excluded == 7);
      for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(t.rows[k - 1].replicate < t.rows[k].replicate);
      for (const auto& r : t.rows) CHECK(r.seed == derive_seed(17, r.replicate));
    }
    CHECK_THROWS_AS(run_replicates({"x"}, 10, 1, 0, 2,
                                   [](std::size_t i, std::uint64_t) -> std::optional<ResultRow> {
                                     if (i == 4) throw DomainError("boom");
                                     return ResultRow{i, 0, {0.0}};
                                   }),
                    DomainError);
  }

  TEST_CASE("CSV output round trips") {
    ResultTable t;
    t.columns = {"a", "b"};
    t.rows = {{0, 5, {0.1, 1.0 / 3.0}, true, true}, {1, 6, {-2.5e-17, 12345678.9}, false, true}};
    const std::string csv = to_csv(t);
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "replicate,seed,a,b,certified,general_position");
    for (const auto& row : t.rows) {
      std::getline(ss, line);
      const auto cells = split(line);
      REQUIRE(cells.size() == 6);
      CHECK(std::stoul(cells[0]) == row.replicate);
      CHECK(std::stod(cells[2]) == row.values[0]);
      CHECK(std::stod(cells[3]) == row.values[1]);
      CHECK(cells[4] == (row.certified ? "1" : "0"));
    }
  }

  TEST_CASE("fvector-mc accounts for every replicate") {
    const auto dir = scratch("fvector");
    const RunOutcome o = run(config("fvector-mc", R"({"body":{"kind":"ball","r":1,"center":[0,0]},"n":200,"replicates":40,"seed":3})", dir), 2);
    REQUIRE_MESSAGE(o.exit_code == 0, o.message);
    const json s = json::parse(slurp(dir / "fvector-mc.summary.json"));
    CHECK(s.at("rows").get<long>() + s.at("excluded_replicates").get<long>() == 40);
    const json& f0 = s.at("statistics").at("f0");
    const json& f1 = s.at("statistics").at("f1");
    CHECK(f0.at("mean").get<double>() == Approx(f1.at("mean").get<double>()));
    CHECK(f0.at("moments").size() == 4);
    std::stringstream csv(slurp(dir / "fvector-mc.csv"));
    long lines = 0;
    for (std::string line; std::getline(csv, line);) ++lines;
    CHECK(lines - 1 == s.at("rows").get<long>());
  }

  TEST_CASE("thread count does not change the output") {
    const auto r = checks::thread_determinism(scratch("determinism").string());
    CHECK_MESSAGE(r.ok, r.detail);
  }

  TEST_CASE("sample-hull dumps geometry") {
    const auto dir = scratch("sample-hull");
    const RunOutcome o =
        run(config("sample-hull", R"({"body":{"kind":"ball","r":1,"center":[0,0]},"n":30,"replicates":3,"seed":4,"dump":2})", dir), 1);
    REQUIRE_MESSAGE(o.exit_code == 0, o.message);
    CHECK(std::filesystem::exists(dir / "sample-hull.0.json"));
    CHECK(std::filesystem::exists(dir / "sample-hull.1.json"));
    CHECK_FALSE(std::filesystem::exists(dir / "sample-hull.2.json"));
    const json g = json::parse(slurp(dir / "sample-hull.0.json"));
    CHECK(g.is_object());
  }

  TEST_CASE("zero cell dumps are OFF files") {
    const auto dir = scratch("zerocell");
    const RunOutcome o =
        run(config("zerocell-mc", R"({"body":{"kind":"ball","r":1,"center":[0,0,0]},"replicates":5,"seed":5,"dump":1})", dir), 1);
    REQUIRE_MESSAGE(o.exit_code == 0, o.message);
    const std::string off = slurp(dir / "zerocell-mc.0.off");
    CHECK(off.rfind("OFF", 0) == 0);
    const json s = json::parse(slurp(dir / "zerocell-mc.summary.json"));
    CHECK(s.at("statistics").at("V0").at("mean").get<double>() == Approx(1.0));
  }

  TEST_CASE("expected-facets and convergence") {
    const auto dir = scratch("expected");
    RunOutcome o = run(config("expected-facets",
                              R"({"body":{"kind":"ball","r":1,"center":[0,0]},"seed":6,"resolution":{"inner_samples":20000}})", dir),
                       1);
    REQUIRE_MESSAGE(o.exit_code == 0, o.message);
    const json s = json::parse(slurp(dir / "expected-facets.summary.json"));
    CHECK(s.at("method").get<std::string>() == "monte_carlo");
    CHECK(s.at("symmetric").at("value").get<double>() == Approx(4.934802200544679).epsilon(1e-6));

    o = run(config("convergence", R"({"body":{"kind":"ball","r":1,"center":[0,0]},"n_values":[50,100],"replicates":5,"seed":7})", dir), 1);
    REQUIRE_MESSAGE(o.exit_code == 0, o.message);
    const json c = json::parse(slurp(dir / "convergence.summary.json"));
    CHECK(c.at("by_n").contains("50"));
    CHECK(c.at("by_n").contains("100"));
  }
}
