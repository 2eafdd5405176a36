#include "pfis/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pfis/scores.hpp"

namespace pfis {

namespace {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Bits fields may be infinite; JSON numbers cannot, so infinities are
// serialized as strings, an explicit sentinel distinguishable from every
// finite score.
ordered_json bits_to_json(double bits) {
  if (std::isinf(bits)) return bits > 0 ? "infinity" : "-infinity";
  return bits;
}

double bits_from_json(const ordered_json& node) {
  if (node.is_string()) {
    return node.get<std::string>() == "-infinity" ? -std::numeric_limits<double>::infinity()
                                                  : std::numeric_limits<double>::infinity();
  }
  return node.get<double>();
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

RunRecord run_single(const SystemConfig& config, const Observation& obs, std::size_t row,
                     std::optional<std::string> time_label) {
  RunRecord rec;
  rec.row = row;
  rec.time_label = std::move(time_label);
  rec.observation = obs;

  // Coverage check first: a variable used only by rules that would not fire
  // is still required, so data problems cannot hide behind inactive rules.
  for (const Rule& rule : config.ruleset.rules) {
    for (const Clause& clause : rule.antecedent) {
      if (obs.find(clause.variable) == obs.end()) {
        throw DataError("rule '" + rule.id + "': observation missing variable '" +
                        clause.variable + "'");
      }
    }
  }

  for (const Rule& rule : config.ruleset.rules) {
    for (const Clause& clause : rule.antecedent) {
      const Degree d = fuzzify(obs, clause, config.variables);
      const std::string label =
          clause.negated ? "not " + clause.category : clause.category;
      rec.readings.push_back({rule.id, clause, d, verbalize(d, label)});
    }
    rec.activations.push_back(activate(rule, obs, config.variables));
  }

  rec.raw = aggregate(rec.activations, config.output());
  rec.report = build_report(rec.raw, config.unsure_in_necessity);
  if (rec.raw.max_pi().value() > 0.0) {
    rec.scenarios = percentile_defuzz(rec.raw, config.percentiles);
  }
  for (const auto& [name, p] : rec.raw.per_category) {
    rec.category_verbalizations.emplace_back(name, verbalize(p, "possible"));
  }
  return rec;
}

void verify_record(RunRecord& record, const SystemConfig& config, double observed_value,
                   std::optional<double> baseline_support) {
  if (!std::isfinite(observed_value)) {
    throw DataError("observed outcome value is not finite");
  }
  const LinguisticVariable& out = config.output();

  Verification v;
  v.observed_value = observed_value;
  double best = -1.0;
  for (const Category& c : out.categories()) {
    const double mu = out.membership(c.name, observed_value).value();
    if (mu > best) {
      best = mu;
      v.observed_category = c.name;
    }
  }

  v.support = Degree(0.0);
  for (const DualMeasure& dual : record.report.duals) {
    if (dual.category == v.observed_category) {
      v.support = dual.possibility;
      break;
    }
  }
  v.ignorance_bits = ignorance(v.support);
  if (baseline_support.has_value()) {
    try {
      v.info_gain_bits = notional_info_gain(v.support, Degree(*baseline_support));
    } catch (const DomainError&) {
      v.info_gain_bits = std::nullopt;  // both supports zero: undefined, serialized as null
    }
  }
  record.verification = std::move(v);
}

std::string record_to_jsonl(const RunRecord& record) {
  ordered_json j;
  j["row"] = record.row;
  if (record.time_label.has_value()) j["time"] = *record.time_label;

  j["observation"] = ordered_json::object();
  for (const auto& [name, value] : record.observation) j["observation"][name] = value;

  j["activations"] = ordered_json::array();
  for (const Activation& a : record.activations) {
    j["activations"].push_back(
        {{"rule", a.rule_id}, {"level", a.level.value()}, {"category", a.consequent_category}});
  }

  j["distribution"] = {
      {"grid_min", record.raw.grid.front()},
      {"grid_max", record.raw.grid.back()},
      {"grid_points", record.raw.grid.size()},
      {"normalized", record.raw.normalized},
  };
  ordered_json pi = ordered_json::array();
  for (const Degree d : record.raw.pi) pi.push_back(d.value());
  j["distribution"]["pi"] = std::move(pi);

  j["per_category"] = ordered_json::object();
  for (const auto& [name, p] : record.raw.per_category) j["per_category"][name] = p.value();

  j["unsure"] = record.report.unsure.value();

  j["duals"] = ordered_json::array();
  for (const DualMeasure& d : record.report.duals) {
    j["duals"].push_back({{"category", d.category},
                          {"possibility", d.possibility.value()},
                          {"necessity", d.necessity.value()},
                          {"valid", d.valid}});
  }

  if (record.scenarios.has_value()) {
    ordered_json sc;
    sc["auc"] = record.scenarios->total_auc;
    sc["percentiles"] = ordered_json::array();
    for (const auto& [p, x] : record.scenarios->percentiles) {
      sc["percentiles"].push_back({{"p", p}, {"value", x}});
    }
    j["scenarios"] = std::move(sc);
  } else {
    j["scenarios"] = nullptr;
  }

  ordered_json inputs = ordered_json::array();
  for (const ClauseReading& r : record.readings) {
    inputs.push_back({{"rule", r.rule_id},
                      {"variable", r.clause.variable},
                      {"category", r.clause.category},
                      {"negated", r.clause.negated},
                      {"degree", r.degree.value()},
                      {"text", r.text}});
  }
  ordered_json cats = ordered_json::array();
  for (const auto& [name, text] : record.category_verbalizations) {
    cats.push_back({{"category", name}, {"text", text}});
  }
  j["verbalized"] = {{"inputs", std::move(inputs)}, {"categories", std::move(cats)}};

  if (record.verification.has_value()) {
    const Verification& v = *record.verification;
    ordered_json ver;
    ver["observed_value"] = v.observed_value;
    ver["observed_category"] = v.observed_category;
    ver["support"] = v.support.value();
    ver["ignorance_bits"] = bits_to_json(v.ignorance_bits);
    if (v.info_gain_bits.has_value()) {
      ver["notional_info_gain"] = {{"bits", bits_to_json(*v.info_gain_bits)},
                                   {"experimental", true}};
    }
    j["verification"] = std::move(ver);
  }

  return j.dump();
}

RunRecord record_from_jsonl(const std::string& line) {
  const ordered_json j = ordered_json::parse(line);
  RunRecord rec;
  rec.row = j.at("row").get<std::size_t>();
  if (j.contains("time")) rec.time_label = j["time"].get<std::string>();

  for (const auto& [name, value] : j.at("observation").items()) {
    rec.observation[name] = value.get<double>();
  }
  for (const auto& a : j.at("activations")) {
    rec.activations.push_back({a.at("rule").get<std::string>(),
                               Degree(a.at("level").get<double>()),
                               a.at("category").get<std::string>()});
  }

  const auto& dist = j.at("distribution");
  rec.raw.grid = make_grid(dist.at("grid_min").get<double>(), dist.at("grid_max").get<double>(),
                           dist.at("grid_points").get<int>());
  for (const auto& v : dist.at("pi")) rec.raw.pi.push_back(Degree(v.get<double>()));
  rec.raw.normalized = dist.at("normalized").get<bool>();
  for (const auto& [name, p] : j.at("per_category").items()) {
    rec.raw.per_category.emplace_back(name, Degree(p.get<double>()));
  }

  rec.report.unsure = Degree(j.at("unsure").get<double>());
  for (const auto& d : j.at("duals")) {
    rec.report.duals.push_back({d.at("category").get<std::string>(),
                                Degree(d.at("possibility").get<double>()),
                                Degree(d.at("necessity").get<double>()),
                                d.at("valid").get<bool>()});
  }

  if (!j.at("scenarios").is_null()) {
    ScenarioSet sc;
    sc.total_auc = j["scenarios"].at("auc").get<double>();
    for (const auto& p : j["scenarios"].at("percentiles")) {
      sc.percentiles.emplace_back(p.at("p").get<double>(), p.at("value").get<double>());
    }
    rec.scenarios = std::move(sc);
  }

  for (const auto& r : j.at("verbalized").at("inputs")) {
    rec.readings.push_back({r.at("rule").get<std::string>(),
                            Clause{r.at("variable").get<std::string>(),
                                   r.at("category").get<std::string>(),
                                   r.at("negated").get<bool>()},
                            Degree(r.at("degree").get<double>()), r.at("text").get<std::string>()});
  }
  for (const auto& c : j.at("verbalized").at("categories")) {
    rec.category_verbalizations.emplace_back(c.at("category").get<std::string>(),
                                             c.at("text").get<std::string>());
  }

  if (j.contains("verification")) {
    const auto& ver = j["verification"];
    Verification v;
    v.observed_value = ver.at("observed_value").get<double>();
    v.observed_category = ver.at("observed_category").get<std::string>();
    v.support = Degree(ver.at("support").get<double>());
    v.ignorance_bits = bits_from_json(ver.at("ignorance_bits"));
    if (ver.contains("notional_info_gain") && !ver["notional_info_gain"].at("bits").is_null()) {
      v.info_gain_bits = bits_from_json(ver["notional_info_gain"]["bits"]);
    }
    rec.verification = std::move(v);
  }
  return rec;
}

namespace {

// Minimal RFC-4180 reader: quoted fields, doubled-quote escapes, CRLF line
// endings. The full document is split first so records with embedded
// newlines inside quotes are not a concern for numeric observation data.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool parse_cell_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

struct ColumnPlan {
  int time_column = -1;
  int outcome_column = -1;                      // observed output value, optional
  std::vector<std::pair<int, std::string>> variable_columns;  // column -> variable
};

ColumnPlan plan_columns(const std::vector<std::string>& header, const SystemConfig& config) {
  ColumnPlan plan;
  std::set<std::string> required;
  for (const Rule& rule : config.ruleset.rules) {
    for (const Clause& clause : rule.antecedent) required.insert(clause.variable);
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = trim(header[i]);
    if (!seen.insert(lower(name)).second) {
      throw DataError("CSV header: duplicate column '" + name + "'");
    }
    // Declared variable names take precedence over the time-label convention.
    if (name == config.output_variable) {
      plan.outcome_column = static_cast<int>(i);
      continue;
    }
    if (find_variable(config.variables, name) != nullptr) {
      plan.variable_columns.emplace_back(static_cast<int>(i), name);
      continue;
    }
    const std::string low = lower(name);
    if (low == "time" || low == "timestamp") {
      plan.time_column = static_cast<int>(i);
      continue;
    }
    std::string expected;
    for (const std::string& r : required) {
      if (!expected.empty()) expected += ", ";
      expected += r;
    }
    throw DataError("CSV header: unknown column '" + name + "'; required variables: " + expected +
                    "; optional: time, " + config.output_variable);
  }

  for (const std::string& r : required) {
    const bool have = std::any_of(plan.variable_columns.begin(), plan.variable_columns.end(),
                                  [&](const auto& vc) { return vc.second == r; });
    if (!have) {
      throw DataError("CSV header: missing required column '" + r + "'");
    }
  }
  return plan;
}

struct RowOutcome {
  bool ok = false;
  double unsure = 0.0;
  bool has_ignorance = false;
  double ignorance_bits = 0.0;
  bool has_info_gain = false;
  double info_gain_bits = 0.0;
};

}  // namespace

BatchSummary run_batch(const SystemConfig& config, const std::string& csv_path,
                       const std::string& out_path, const BatchOptions& options) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open observations file '" + csv_path + "'");
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && !(line.size() == 1 && line[0] == '\r')) lines.push_back(line);
  }
  if (in.bad()) {
    throw IoError("failed reading observations file '" + csv_path + "'");
  }
  if (lines.empty()) {
    throw DataError("observations file '" + csv_path + "' has no header row");
  }

  const ColumnPlan plan = plan_columns(split_csv_line(lines.front()), config);
  const std::size_t rows = lines.size() - 1;

  std::vector<std::string> out_lines(rows);
  std::vector<RowOutcome> outcomes(rows);

  auto process_row = [&](std::size_t r) {
    const std::vector<std::string> cells = split_csv_line(lines[r + 1]);
    std::optional<std::string> time_label;
    if (plan.time_column >= 0 && static_cast<std::size_t>(plan.time_column) < cells.size()) {
      time_label = trim(cells[static_cast<std::size_t>(plan.time_column)]);
    }
    try {
      Observation obs;
      for (const auto& [col, var] : plan.variable_columns) {
        if (static_cast<std::size_t>(col) >= cells.size()) {
          throw DataError("row is missing a value for column '" + var + "'");
        }
        double value = 0.0;
        if (!parse_cell_double(cells[static_cast<std::size_t>(col)], value)) {
          throw DataError("cannot parse value '" + trim(cells[static_cast<std::size_t>(col)]) +
                          "' for column '" + var + "'");
        }
        obs[var] = value;
      }

      RunRecord rec = run_single(config, obs, r, time_label);
      if (plan.outcome_column >= 0) {
        if (static_cast<std::size_t>(plan.outcome_column) >= cells.size()) {
          throw DataError("row is missing a value for column '" + config.output_variable + "'");
        }
        double observed = 0.0;
        if (!parse_cell_double(cells[static_cast<std::size_t>(plan.outcome_column)], observed)) {
          throw DataError("cannot parse value '" +
                          trim(cells[static_cast<std::size_t>(plan.outcome_column)]) +
                          "' for column '" + config.output_variable + "'");
        }
        verify_record(rec, config, observed, options.baseline_support);
      }

      out_lines[r] = record_to_jsonl(rec);
      RowOutcome& o = outcomes[r];
      o.ok = true;
      o.unsure = rec.report.unsure.value();
      if (rec.verification.has_value()) {
        o.has_ignorance = true;
        o.ignorance_bits = rec.verification->ignorance_bits;
        if (rec.verification->info_gain_bits.has_value()) {
          o.has_info_gain = true;
          o.info_gain_bits = *rec.verification->info_gain_bits;
        }
      }
    } catch (const Error& e) {
      ordered_json err;
      err["row"] = r;
      if (time_label.has_value()) err["time"] = *time_label;
      err["error"] = e.what();
      out_lines[r] = err.dump();
    }
  };

  const int workers = std::clamp(options.workers, 1, 64);
  if (workers == 1 || rows < 2) {
    for (std::size_t r = 0; r < rows; ++r) process_row(r);
  } else {
    std::atomic<std::size_t> next{0};
    auto drain = [&]() {
      for (;;) {
        const std::size_t r = next.fetch_add(1);
        if (r >= rows) return;
        process_row(r);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();
  }

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open output file '" + out_path + "'");
  }
  for (const std::string& l : out_lines) {
    out << l << '\n';
  }
  out.flush();
  if (!out) {
    throw IoError("failed writing output file '" + out_path + "'");
  }

  BatchSummary summary;
  summary.rows = rows;
  double unsure_sum = 0.0;
  std::size_t ok_count = 0;
  double ign_sum = 0.0;
  std::size_t ign_count = 0;
  double ig_sum = 0.0;
  std::size_t ig_count = 0;
  for (const RowOutcome& o : outcomes) {
    if (!o.ok) {
      ++summary.errors;
      continue;
    }
    ++ok_count;
    unsure_sum += o.unsure;
    if (o.has_ignorance) {
      ++ign_count;
      ign_sum += o.ignorance_bits;
    }
    if (o.has_info_gain) {
      ++ig_count;
      ig_sum += o.info_gain_bits;
    }
  }
  summary.mean_unsure = ok_count > 0 ? unsure_sum / static_cast<double>(ok_count) : 0.0;
  if (ign_count > 0) summary.mean_ignorance_bits = ign_sum / static_cast<double>(ign_count);
  if (ig_count > 0) summary.mean_info_gain_bits = ig_sum / static_cast<double>(ig_count);
  return summary;
}

std::string summary_to_json(const BatchSummary& summary) {
  ordered_json j;
  j["rows"] = summary.rows;
  j["errors"] = summary.errors;
  j["mean_unsure"] = summary.mean_unsure;
  if (summary.mean_ignorance_bits.has_value()) {
    j["mean_ignorance_bits"] = bits_to_json(*summary.mean_ignorance_bits);
  }
  if (summary.mean_info_gain_bits.has_value()) {
    j["notional_info_gain"] = {{"mean_bits", bits_to_json(*summary.mean_info_gain_bits)},
                               {"experimental", true}};
  }
  return j.dump();
}

void export_curves(const SystemConfig& config, const std::optional<Observation>& obs,
                   const std::string& out_dir, const std::optional<std::string>& variable_filter) {
  if (variable_filter.has_value() &&
      find_variable(config.variables, *variable_filter) == nullptr) {
    std::string known;
    for (const auto& v : config.variables) {
      if (!known.empty()) known += ", ";
      known += v.name();
    }
    throw ConfigError("unknown variable '" + *variable_filter + "'; known variables: " + known);
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  }

  auto open_csv = [&](const std::string& name) {
    std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw IoError("cannot open '" + (std::filesystem::path(out_dir) / name).string() +
                    "' for writing");
    }
    return f;
  };

  for (const LinguisticVariable& var : config.variables) {
    if (variable_filter.has_value() && var.name() != *variable_filter) continue;
    std::ofstream f = open_csv(var.name() + ".csv");
    f << "x";
    for (const Category& c : var.categories()) f << "," << c.name;
    f << "\n";
    const auto grid = var.grid();
    std::vector<std::vector<Degree>> curves;
    curves.reserve(var.categories().size());
    for (const Category& c : var.categories()) curves.push_back(var.sample_on_grid(c.name));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      f << format_double(grid[i]);
      for (const auto& curve : curves) f << "," << format_double(curve[i].value());
      f << "\n";
    }
    if (!f) {
      throw IoError("failed writing curves for variable '" + var.name() + "'");
    }
  }

  if (!obs.has_value()) return;

  const RunRecord rec = run_single(config, *obs);
  std::ofstream f = open_csv("aggregated.csv");
  f << "x";
  for (const Activation& a : rec.activations) f << ",clip_" << a.rule_id;
  f << ",pi";
  const bool have_norm = rec.report.normalized.has_value();
  if (have_norm) f << ",pi_normalized";
  f << "\n";

  const LinguisticVariable& out_var = config.output();
  std::vector<std::vector<Degree>> clipped;
  for (const Activation& a : rec.activations) {
    std::vector<Degree> curve = out_var.sample_on_grid(a.consequent_category);
    for (Degree& d : curve) d = fuzzy_and(d, a.level);
    clipped.push_back(std::move(curve));
  }
  for (std::size_t i = 0; i < rec.raw.grid.size(); ++i) {
    f << format_double(rec.raw.grid[i]);
    for (const auto& curve : clipped) f << "," << format_double(curve[i].value());
    f << "," << format_double(rec.raw.pi[i].value());
    if (have_norm) f << "," << format_double(rec.report.normalized->pi[i].value());
    f << "\n";
  }
  if (!f) {
    throw IoError("failed writing aggregated curves");
  }
}

}  // namespace pfis
