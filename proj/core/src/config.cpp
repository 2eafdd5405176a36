#include "pfis/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pfis {

namespace {

using nlohmann::ordered_json;

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (const char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

class Collector {
 public:
  void add(std::string pointer, std::string message) {
    violations_.push_back({std::move(pointer), std::move(message)});
  }
  bool empty() const { return violations_.empty(); }
  std::vector<ConfigViolation> take() { return std::move(violations_); }

 private:
  std::vector<ConfigViolation> violations_;
};

// Intermediate category spec; MembershipFunction construction happens after
// all schema checks so every violation is collected first.
struct CategorySpec {
  std::string name;
  bool is_trapezoid = false;
  Trapezoid trapezoid;
  LinearSigmoid sigmoid;
};

struct VariableSpec {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  int grid_points = 0;  // 0: inherit the global value
  std::vector<CategorySpec> categories;
};

bool expect_number(const ordered_json& node, const std::string& pointer, const char* what,
                   Collector& out, double& value) {
  if (!node.is_number()) {
    out.add(pointer, std::string(what) + " must be a number");
    return false;
  }
  value = node.get<double>();
  return true;
}

void check_unknown_keys(const ordered_json& obj, const std::string& pointer,
                        const std::set<std::string>& known, Collector& out) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (known.count(key) == 0 && key != "comment") {
      out.add(pointer + "/" + key, "unknown key '" + key + "'");
    }
  }
}

CategorySpec parse_category(const ordered_json& node, const std::string& pointer,
                            bool is_output_variable, Collector& out) {
  CategorySpec spec;
  if (!node.is_object()) {
    out.add(pointer, "category must be an object");
    return spec;
  }

  if (!node.contains("name") || !node["name"].is_string()) {
    out.add(pointer + "/name", "category name must be a string");
  } else {
    spec.name = node["name"].get<std::string>();
    if (!is_identifier(spec.name)) {
      out.add(pointer + "/name", "category name '" + spec.name + "' is not an identifier");
    }
    if (is_output_variable && spec.name == "unsure") {
      out.add(pointer + "/name",
              "'unsure' is reserved for the residual category on the output variable");
    }
  }

  const std::string shape =
      node.contains("shape") && node["shape"].is_string() ? node["shape"].get<std::string>() : "";
  double height = 1.0;
  if (node.contains("height")) {
    if (expect_number(node["height"], pointer + "/height", "height", out, height)) {
      if (!(height >= 0.0 && height <= 1.0)) {
        out.add(pointer + "/height", "height must lie in [0, 1]");
      }
    }
  }

  if (shape == "trapezoid") {
    spec.is_trapezoid = true;
    check_unknown_keys(node, pointer, {"name", "shape", "lower", "upper", "alpha", "beta", "height"},
                       out);
    Trapezoid t;
    t.height = height;
    bool have = true;
    for (const char* key : {"lower", "upper", "alpha", "beta"}) {
      if (!node.contains(key)) {
        out.add(pointer, std::string("trapezoid requires '") + key + "'");
        have = false;
      }
    }
    if (have) {
      have &= expect_number(node["lower"], pointer + "/lower", "lower", out, t.lower);
      have &= expect_number(node["upper"], pointer + "/upper", "upper", out, t.upper);
      have &= expect_number(node["alpha"], pointer + "/alpha", "alpha", out, t.alpha);
      have &= expect_number(node["beta"], pointer + "/beta", "beta", out, t.beta);
    }
    if (have) {
      if (t.lower > t.upper) out.add(pointer, "trapezoid requires lower <= upper");
      if (t.alpha < 0.0) out.add(pointer + "/alpha", "alpha must be >= 0");
      if (t.beta < 0.0) out.add(pointer + "/beta", "beta must be >= 0");
    }
    spec.trapezoid = t;
  } else if (shape == "sigmoid") {
    check_unknown_keys(node, pointer, {"name", "shape", "midpoint", "width", "direction", "height"},
                       out);
    LinearSigmoid s;
    s.height = height;
    bool have = true;
    for (const char* key : {"midpoint", "width", "direction"}) {
      if (!node.contains(key)) {
        out.add(pointer, std::string("sigmoid requires '") + key + "'");
        have = false;
      }
    }
    if (have) {
      have &= expect_number(node["midpoint"], pointer + "/midpoint", "midpoint", out, s.midpoint);
      have &= expect_number(node["width"], pointer + "/width", "width", out, s.width);
      if (!node["direction"].is_string()) {
        out.add(pointer + "/direction", "direction must be \"increasing\" or \"decreasing\"");
        have = false;
      } else {
        const std::string dir = node["direction"].get<std::string>();
        if (dir == "increasing") {
          s.direction = SigmoidDirection::Increasing;
        } else if (dir == "decreasing") {
          s.direction = SigmoidDirection::Decreasing;
        } else {
          out.add(pointer + "/direction", "direction must be \"increasing\" or \"decreasing\"");
          have = false;
        }
      }
    }
    if (have && !(s.width > 0.0)) {
      out.add(pointer + "/width", "width must be > 0");
    }
    spec.sigmoid = s;
  } else {
    out.add(pointer + "/shape", "shape must be \"trapezoid\" or \"sigmoid\"");
  }
  return spec;
}

VariableSpec parse_variable(const ordered_json& node, const std::string& pointer,
                            const std::string& output_name, Collector& out) {
  VariableSpec spec;
  if (!node.is_object()) {
    out.add(pointer, "variable must be an object");
    return spec;
  }
  check_unknown_keys(node, pointer, {"name", "universe", "grid_points", "categories"}, out);

  if (!node.contains("name") || !node["name"].is_string()) {
    out.add(pointer + "/name", "variable name must be a string");
  } else {
    spec.name = node["name"].get<std::string>();
    if (!is_identifier(spec.name)) {
      out.add(pointer + "/name", "variable name '" + spec.name + "' is not an identifier");
    }
  }

  if (!node.contains("universe") || !node["universe"].is_array() ||
      node["universe"].size() != 2 || !node["universe"][0].is_number() ||
      !node["universe"][1].is_number()) {
    out.add(pointer + "/universe", "universe must be [min, max]");
  } else {
    spec.lo = node["universe"][0].get<double>();
    spec.hi = node["universe"][1].get<double>();
    if (!(spec.lo < spec.hi)) {
      out.add(pointer + "/universe", "universe min must be < max");
    }
  }

  if (node.contains("grid_points")) {
    if (!node["grid_points"].is_number_integer() || node["grid_points"].get<int>() < 2) {
      out.add(pointer + "/grid_points", "grid_points must be an integer >= 2");
    } else {
      spec.grid_points = node["grid_points"].get<int>();
    }
  }

  if (!node.contains("categories") || !node["categories"].is_array() ||
      node["categories"].empty()) {
    out.add(pointer + "/categories", "categories must be a non-empty array");
    return spec;
  }
  std::set<std::string> seen;
  const bool is_output = spec.name == output_name;
  for (std::size_t i = 0; i < node["categories"].size(); ++i) {
    const std::string cat_ptr = pointer + "/categories/" + std::to_string(i);
    CategorySpec cat = parse_category(node["categories"][i], cat_ptr, is_output, out);
    if (!cat.name.empty() && !seen.insert(cat.name).second) {
      out.add(cat_ptr + "/name", "duplicate category '" + cat.name + "'");
    }
    spec.categories.push_back(std::move(cat));
  }
  return spec;
}

}  // namespace

const LinguisticVariable& SystemConfig::variable(std::string_view name) const {
  const LinguisticVariable* var = find_variable(variables, name);
  if (var == nullptr) {
    throw DomainError("no variable named '" + std::string(name) + "'");
  }
  return *var;
}

SystemConfig parse_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what(),
                      {{"", e.what()}});
  }

  Collector out;
  SystemConfig config;

  if (!doc.is_object()) {
    throw ConfigError("config root must be a JSON object", {{"", "root must be an object"}});
  }
  check_unknown_keys(doc, "",
                     {"schema", "output_variable", "grid_points", "percentiles",
                      "unsure_in_necessity", "variables", "rules"},
                     out);

  if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
      doc["schema"].get<int>() != 1) {
    out.add("/schema", "schema version must be the integer 1");
  }

  if (!doc.contains("output_variable") || !doc["output_variable"].is_string()) {
    out.add("/output_variable", "output_variable must be a string");
  } else {
    config.output_variable = doc["output_variable"].get<std::string>();
  }

  if (doc.contains("grid_points")) {
    if (!doc["grid_points"].is_number_integer() || doc["grid_points"].get<int>() < 2) {
      out.add("/grid_points", "grid_points must be an integer >= 2");
    } else {
      config.grid_points = doc["grid_points"].get<int>();
    }
  }

  if (doc.contains("percentiles")) {
    if (!doc["percentiles"].is_array() || doc["percentiles"].empty()) {
      out.add("/percentiles", "percentiles must be a non-empty array");
    } else {
      std::vector<double> ps;
      bool good = true;
      for (std::size_t i = 0; i < doc["percentiles"].size(); ++i) {
        if (!doc["percentiles"][i].is_number()) {
          out.add("/percentiles/" + std::to_string(i), "percentile must be a number");
          good = false;
          continue;
        }
        const double p = doc["percentiles"][i].get<double>();
        if (!(p > 0.0 && p < 1.0)) {
          out.add("/percentiles/" + std::to_string(i), "percentile must lie in (0, 1)");
          good = false;
        }
        if (!ps.empty() && good && p <= ps.back()) {
          out.add("/percentiles/" + std::to_string(i), "percentiles must be strictly increasing");
          good = false;
        }
        ps.push_back(p);
      }
      if (good) config.percentiles = std::move(ps);
    }
  }

  if (doc.contains("unsure_in_necessity")) {
    if (!doc["unsure_in_necessity"].is_boolean()) {
      out.add("/unsure_in_necessity", "unsure_in_necessity must be a boolean");
    } else {
      config.unsure_in_necessity = doc["unsure_in_necessity"].get<bool>();
    }
  }

  std::vector<VariableSpec> var_specs;
  if (!doc.contains("variables") || !doc["variables"].is_array() || doc["variables"].empty()) {
    out.add("/variables", "variables must be a non-empty array");
  } else {
    std::set<std::string> names;
    for (std::size_t i = 0; i < doc["variables"].size(); ++i) {
      const std::string ptr = "/variables/" + std::to_string(i);
      VariableSpec spec = parse_variable(doc["variables"][i], ptr, config.output_variable, out);
      if (!spec.name.empty() && !names.insert(spec.name).second) {
        out.add(ptr + "/name", "duplicate variable '" + spec.name + "'");
      }
      var_specs.push_back(std::move(spec));
    }
    if (!config.output_variable.empty() && names.count(config.output_variable) == 0) {
      out.add("/output_variable",
              "output variable '" + config.output_variable + "' is not declared");
    }
  }

  std::string rules_text;
  bool rules_usable = false;
  if (!doc.contains("rules") || !doc["rules"].is_array() || doc["rules"].empty()) {
    out.add("/rules", "rules must be a non-empty array of strings");
  } else {
    rules_usable = true;
    for (std::size_t i = 0; i < doc["rules"].size(); ++i) {
      if (!doc["rules"][i].is_string()) {
        out.add("/rules/" + std::to_string(i), "rule must be a string");
        rules_usable = false;
        continue;
      }
      const std::string line = doc["rules"][i].get<std::string>();
      if (line.find('\n') != std::string::npos) {
        out.add("/rules/" + std::to_string(i), "rule text must be a single line");
        rules_usable = false;
        continue;
      }
      config.rule_lines.push_back(line);
      rules_text += line;
      rules_text += '\n';
    }
  }

  // Rule syntax needs no resolved variables, so syntax errors are collected
  // together with the schema violations above.
  bool ruleset_parsed = false;
  if (rules_usable) {
    try {
      config.ruleset = parse_ruleset(rules_text, config.output_variable);
      ruleset_parsed = true;
    } catch (const ParseError& e) {
      out.add("/rules/" + std::to_string(e.line() - 1), e.what());
    }
  }

  // Construction and cross-reference checks run only once the document is
  // schema-clean, so a bad value never cascades into confusing follow-ups.
  if (out.empty()) {
    for (std::size_t i = 0; i < var_specs.size(); ++i) {
      const VariableSpec& spec = var_specs[i];
      std::vector<Category> cats;
      for (const CategorySpec& c : spec.categories) {
        if (c.is_trapezoid) {
          cats.push_back({c.name, MembershipFunction(c.trapezoid)});
        } else {
          cats.push_back({c.name, MembershipFunction(c.sigmoid)});
        }
      }
      const int grid = spec.grid_points > 0 ? spec.grid_points : config.grid_points;
      try {
        config.variables.emplace_back(spec.name, spec.lo, spec.hi, grid, std::move(cats));
      } catch (const std::invalid_argument& e) {
        out.add("/variables/" + std::to_string(i), e.what());
      }
    }
  }

  if (out.empty() && ruleset_parsed) {
    const ValidationReport report = validate_ruleset(config.ruleset, config.variables);
    for (const std::string& msg : report.errors()) {
      out.add("/rules", msg);
    }
  }

  if (!out.empty()) {
    auto violations = out.take();
    std::ostringstream os;
    os << "config has " << violations.size()
       << (violations.size() == 1 ? " violation" : " violations");
    throw ConfigError(os.str(), std::move(violations));
  }
  return config;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading config file '" + path + "'");
  }
  return parse_config(ss.str());
}

ValidationReport validate_config(const SystemConfig& config) {
  return validate_ruleset(config.ruleset, config.variables);
}

}  // namespace pfis
