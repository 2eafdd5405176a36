#include "pfis/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pfis/scores.hpp"

using namespace pfis;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("pfis_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

SystemConfig reference() { return load_config(PFIS_REFERENCE_CONFIG); }

}  // namespace

TEST_CASE("run_single: worked example end to end") {
  const SystemConfig config = reference();
  const RunRecord rec = run_single(config, {{"wind", 1.6}, {"snow", 9.3}});

  REQUIRE(rec.activations.size() == 2);
  const double calm = config.variable("wind").membership("calm", 1.6).value();
  const double deep = config.variable("snow").membership("deep", 9.3).value();
  CHECK(calm == doctest::Approx(0.77).epsilon(1e-12));
  CHECK(deep == doctest::Approx(0.38).epsilon(1e-12));
  CHECK(rec.activations[0].level.value() == std::min(calm, deep));
  CHECK(rec.activations[0].consequent_category == "elevated");

  // Raw per-category possibility reproduces the min-combination.
  CHECK(rec.raw.category_possibility("elevated")->value() ==
        doctest::Approx(0.38).epsilon(1e-12));
  CHECK(rec.report.unsure.value() == doctest::Approx(0.62).epsilon(1e-12));

  // Normalized duals: elevated fully possible, others valid.
  REQUIRE(rec.report.duals.size() == 3);
  for (const DualMeasure& d : rec.report.duals) {
    CHECK(d.valid);
    if (d.category == "elevated") {
      CHECK(d.possibility.value() == 1.0);
      CHECK(d.necessity.value() == doctest::Approx(0.38).epsilon(1e-12));
    } else {
      CHECK(d.necessity.value() == 0.0);
    }
  }

  REQUIRE(rec.scenarios.has_value());
  REQUIRE(rec.scenarios->percentiles.size() == 3);
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(rec.scenarios->percentiles[i].second > rec.scenarios->percentiles[i - 1].second);
  }

  // Lexical renderings from the fuzzified degrees.
  bool saw_calm = false, saw_deep = false;
  for (const ClauseReading& r : rec.readings) {
    if (r.clause.category == "calm") {
      CHECK(r.text == "Substantially calm");
      saw_calm = true;
    }
    if (r.clause.category == "deep") {
      CHECK(r.text == "Somewhat deep");
      saw_deep = true;
    }
  }
  CHECK(saw_calm);
  CHECK(saw_deep);
  bool saw_elevated = false;
  for (const auto& [cat, text] : rec.category_verbalizations) {
    if (cat == "elevated") {
      CHECK(text == "Somewhat possible");
      saw_elevated = true;
    }
  }
  CHECK(saw_elevated);
}

TEST_CASE("run_single: strong wind flips the forecast to background") {
  const SystemConfig config = reference();
  const RunRecord rec = run_single(config, {{"wind", 15.0}, {"snow", 0.0}});
  CHECK(rec.activations[0].level.value() == 0.0);  // elevated rule silent
  CHECK(rec.activations[1].level.value() == 1.0);  // breezy saturated
  CHECK(rec.raw.category_possibility("background")->value() == 1.0);
  CHECK(rec.report.unsure.value() == 0.0);
}

TEST_CASE("run_single: missing observation names the rule and variable") {
  const SystemConfig config = reference();
  try {
    run_single(config, {{"wind", 1.6}});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("r1") != std::string::npos);
    CHECK(msg.find("snow") != std::string::npos);
  }
}

TEST_CASE("run_single: silent ruleset reports pure unsure, no scenarios") {
  const SystemConfig config = parse_config(R"({
    "schema": 1,
    "output_variable": "out",
    "grid_points": 21,
    "variables": [
      {"name": "in", "universe": [0, 10], "categories": [
        {"name": "low", "shape": "sigmoid", "midpoint": 2, "width": 2, "direction": "decreasing"}
      ]},
      {"name": "out", "universe": [0, 100], "categories": [
        {"name": "small", "shape": "trapezoid", "lower": 20, "upper": 40, "alpha": 10, "beta": 10}
      ]}
    ],
    "rules": ["IF in IS low THEN out IS small"]
  })");
  const RunRecord rec = run_single(config, {{"in", 9.0}});  // low(9) = 0
  CHECK(rec.report.unsure.value() == 1.0);
  CHECK_FALSE(rec.scenarios.has_value());
  CHECK_FALSE(rec.report.normalized.has_value());
  REQUIRE(rec.report.duals.size() == 1);
  CHECK(rec.report.duals[0].possibility.value() == 0.0);
  CHECK(rec.report.duals[0].necessity.value() == 0.0);
}

TEST_CASE("worked-example cut points split the mass 10/40/40/10") {
  const SystemConfig config = reference();
  const RunRecord rec = run_single(config, {{"wind", 1.6}, {"snow", 9.3}});
  REQUIRE(rec.scenarios.has_value());
  const auto& cuts = rec.scenarios->percentiles;
  REQUIRE(cuts.size() == 3);

  // Re-integrate the aggregated curve between consecutive cut points.
  auto mass_between = [&](double a, double b) {
    double sum = 0.0;
    const auto& g = rec.raw.grid;
    for (std::size_t i = 1; i < g.size(); ++i) {
      const double x0 = std::max(g[i - 1], a), x1 = std::min(g[i], b);
      if (x1 <= x0) continue;
      const double y0 = rec.raw.pi[i - 1].value(), y1 = rec.raw.pi[i].value();
      const double dx = g[i] - g[i - 1];
      const double ya = y0 + (x0 - g[i - 1]) / dx * (y1 - y0);
      const double yb = y0 + (x1 - g[i - 1]) / dx * (y1 - y0);
      sum += 0.5 * (ya + yb) * (x1 - x0);
    }
    return sum;
  };
  const double total = rec.scenarios->total_auc;
  const double lo = rec.raw.grid.front(), hi = rec.raw.grid.back();
  CHECK(mass_between(lo, cuts[0].second) == doctest::Approx(0.1 * total).epsilon(1e-9));
  CHECK(mass_between(cuts[0].second, cuts[1].second) == doctest::Approx(0.4 * total).epsilon(1e-9));
  CHECK(mass_between(cuts[1].second, cuts[2].second) == doctest::Approx(0.4 * total).epsilon(1e-9));
  CHECK(mass_between(cuts[2].second, hi) == doctest::Approx(0.1 * total).epsilon(1e-9));
}

TEST_CASE("record serialization round-trips byte-identically") {
  const SystemConfig config = reference();
  RunRecord rec = run_single(config, {{"wind", 1.6}, {"snow", 9.3}}, 7, "2024-01-11T06:00");
  verify_record(rec, config, 71.25, 0.5);

  const std::string line1 = record_to_jsonl(rec);
  const RunRecord parsed = record_from_jsonl(line1);
  const std::string line2 = record_to_jsonl(parsed);
  CHECK(line1 == line2);
  CHECK(parsed.row == 7);
  REQUIRE(parsed.time_label.has_value());
  CHECK(*parsed.time_label == "2024-01-11T06:00");
  CHECK(parsed.observation.at("wind") == 1.6);
  REQUIRE(parsed.verification.has_value());
  CHECK(parsed.verification->observed_category == "elevated");
}

TEST_CASE("verification scores the observed category's possibility") {
  const SystemConfig config = reference();
  RunRecord rec = run_single(config, {{"wind", 1.6}, {"snow", 9.3}});
  verify_record(rec, config, 75.0, std::nullopt);  // inside 'elevated' plateau
  REQUIRE(rec.verification.has_value());
  CHECK(rec.verification->observed_category == "elevated");
  CHECK(rec.verification->support.value() == 1.0);  // normalized possibility
  CHECK(rec.verification->ignorance_bits == 0.0);
  CHECK_FALSE(rec.verification->info_gain_bits.has_value());

  RunRecord rec2 = run_single(config, {{"wind", 1.6}, {"snow", 9.3}});
  verify_record(rec2, config, 120.0, 0.5);  // 'extreme' observed, baseline half support
  REQUIRE(rec2.verification.has_value());
  CHECK(rec2.verification->observed_category == "extreme");
  REQUIRE(rec2.verification->info_gain_bits.has_value());
  CHECK(*rec2.verification->info_gain_bits ==
        doctest::Approx(ignorance(Degree(0.5)) - rec2.verification->ignorance_bits));
}

TEST_CASE("run_batch: identical rows give identical records") {
  const SystemConfig config = reference();
  TempDir tmp;
  write_file(tmp.path / "obs.csv",
             "wind,snow\n"
             "1.6,9.3\n"
             "1.6,9.3\n"
             "1.6,9.3\n");
  const auto summary =
      run_batch(config, (tmp.path / "obs.csv").string(), (tmp.path / "out.jsonl").string());
  CHECK(summary.rows == 3);
  CHECK(summary.errors == 0);
  CHECK(summary.mean_unsure == doctest::Approx(0.62).epsilon(1e-12));

  std::ifstream f(tmp.path / "out.jsonl");
  std::string l1, l2, l3;
  std::getline(f, l1);
  std::getline(f, l2);
  std::getline(f, l3);
  // Identical except the row index.
  const RunRecord r1 = record_from_jsonl(l1);
  RunRecord r2 = record_from_jsonl(l2);
  CHECK(r2.row == 1);
  r2.row = r1.row;
  CHECK(record_to_jsonl(r2) == record_to_jsonl(r1));
  CHECK_FALSE(l3.empty());
}

TEST_CASE("run_batch: missing required column aborts with a header diagnosis") {
  const SystemConfig config = reference();
  TempDir tmp;
  write_file(tmp.path / "obs.csv", "wind\n1.6\n");
  try {
    run_batch(config, (tmp.path / "obs.csv").string(), (tmp.path / "out.jsonl").string());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("snow") != std::string::npos);
  }

  write_file(tmp.path / "obs2.csv", "wind,snow,humidity\n1.6,9.3,0.5\n");
  CHECK_THROWS_AS(
      run_batch(config, (tmp.path / "obs2.csv").string(), (tmp.path / "out.jsonl").string()),
      DataError);
}

TEST_CASE("run_batch: bad cells become in-stream error records") {
  const SystemConfig config = reference();
  TempDir tmp;
  write_file(tmp.path / "obs.csv",
             "time,wind,snow\n"
             "t0,1.6,9.3\n"
             "t1,oops,9.3\n"
             "t2,2.0,11.0\n");
  const auto summary =
      run_batch(config, (tmp.path / "obs.csv").string(), (tmp.path / "out.jsonl").string());
  CHECK(summary.rows == 3);
  CHECK(summary.errors == 1);

  std::ifstream f(tmp.path / "out.jsonl");
  std::string l0, l1;
  std::getline(f, l0);
  std::getline(f, l1);
  CHECK(l1.find("\"error\"") != std::string::npos);
  CHECK(l1.find("oops") != std::string::npos);
  CHECK(l1.find("t1") != std::string::npos);
  const RunRecord r0 = record_from_jsonl(l0);
  REQUIRE(r0.time_label.has_value());
  CHECK(*r0.time_label == "t0");
}

TEST_CASE("run_batch: verification column feeds the summary scores") {
  const SystemConfig config = reference();
  TempDir tmp;
  write_file(tmp.path / "obs.csv",
             "wind,snow,ozone\n"
             "1.6,9.3,75.0\n"
             "1.6,9.3,30.0\n");
  BatchOptions options;
  options.baseline_support = 0.5;
  const auto summary = run_batch(config, (tmp.path / "obs.csv").string(),
                                 (tmp.path / "out.jsonl").string(), options);
  CHECK(summary.rows == 2);
  REQUIRE(summary.mean_ignorance_bits.has_value());
  REQUIRE(summary.mean_info_gain_bits.has_value());

  const std::string json = summary_to_json(summary);
  CHECK(json.find("\"experimental\":true") != std::string::npos);

  const std::string body = read_file(tmp.path / "out.jsonl");
  CHECK(body.find("notional_info_gain") != std::string::npos);
  CHECK(body.find("\"experimental\":true") != std::string::npos);
}

TEST_CASE("run_batch: parallel output is byte-identical to serial") {
  const SystemConfig config = reference();
  TempDir tmp;
  std::ostringstream csv;
  csv << "wind,snow\n";
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> wind(0.0, 20.0), snow(0.0, 60.0);
  for (int i = 0; i < 64; ++i) csv << wind(rng) << "," << snow(rng) << "\n";
  write_file(tmp.path / "obs.csv", csv.str());

  BatchOptions serial;
  serial.workers = 1;
  BatchOptions parallel;
  parallel.workers = 4;
  run_batch(config, (tmp.path / "obs.csv").string(), (tmp.path / "serial.jsonl").string(),
            serial);
  run_batch(config, (tmp.path / "obs.csv").string(), (tmp.path / "parallel.jsonl").string(),
            parallel);
  CHECK(read_file(tmp.path / "serial.jsonl") == read_file(tmp.path / "parallel.jsonl"));
}

TEST_CASE("export_curves: one CSV per variable with a column per category") {
  const SystemConfig config = reference();
  TempDir tmp;
  export_curves(config, std::nullopt, (tmp.path / "curves").string());

  for (const char* name : {"wind", "snow", "ozone"}) {
    const std::string body = read_file(tmp.path / "curves" / (std::string(name) + ".csv"));
    REQUIRE_FALSE(body.empty());
    // Header plus one row per grid node.
    CHECK(std::count(body.begin(), body.end(), '\n') == 202);
  }
  const std::string wind = read_file(tmp.path / "curves" / "wind.csv");
  CHECK(wind.rfind("x,calm,breezy\n", 0) == 0);
}

TEST_CASE("export_curves: aggregated curve peaks at the max activation") {
  const SystemConfig config = reference();
  TempDir tmp;
  export_curves(config, Observation{{"wind", 1.6}, {"snow", 9.3}},
                (tmp.path / "curves").string());
  std::ifstream f(tmp.path / "curves" / "aggregated.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "x,clip_r1,clip_r2,pi,pi_normalized");
  double max_pi = 0.0;
  std::string line;
  while (std::getline(f, line)) {
    const auto last_comma = line.rfind(',');
    const auto prev_comma = line.rfind(',', last_comma - 1);
    max_pi = std::max(max_pi, std::stod(line.substr(prev_comma + 1, last_comma - prev_comma - 1)));
  }
  CHECK(max_pi == doctest::Approx(0.38).epsilon(1e-12));
}

TEST_CASE("export_curves: unknown variable filter lists the known ones") {
  const SystemConfig config = reference();
  TempDir tmp;
  try {
    export_curves(config, std::nullopt, (tmp.path / "curves").string(), "fog");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("fog") != std::string::npos);
    CHECK(msg.find("wind") != std::string::npos);
    CHECK(msg.find("ozone") != std::string::npos);
  }
  // Valid filter exports exactly one file.
  export_curves(config, std::nullopt, (tmp.path / "only").string(), "snow");
  CHECK(fs::exists(tmp.path / "only" / "snow.csv"));
  CHECK_FALSE(fs::exists(tmp.path / "only" / "wind.csv"));
}
