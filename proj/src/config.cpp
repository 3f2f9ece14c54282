#include "fpsearch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace fpsearch {

namespace {

const std::vector<std::string> kSystemKeys = {"system.coupling_hz", "system.t90_s", "system.t2_h_s",
                                              "system.t2_c_s"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a finite number");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "' needs at least one value");
  return out;
}

std::vector<std::string> keys_for(ExperimentKind kind) {
  std::vector<std::string> keys = {"experiment.name", "output.dir"};
  auto add = [&](std::initializer_list<const char*> more) {
    for (const char* k : more) keys.emplace_back(k);
  };
  auto add_system = [&] { keys.insert(keys.end(), kSystemKeys.begin(), kSystemKeys.end()); };
  switch (kind) {
    case ExperimentKind::Table1:
      add({"order.max", "order.cap"});
      break;
    case ExperimentKind::K1Curves:
    case ExperimentKind::K2Curves:
      add({"oracle.matching", "oracle.phase_deg", "order.min", "order.max", "order.cap",
           "pulse.styles", "error.eps", "error.delta_j", "error.scope"});
      add_system();
      break;
    case ExperimentKind::Robustness:
      add({"oracle.k", "oracle.matching", "oracle.phase_deg", "order.min", "order.max", "order.cap",
           "pulse.styles", "error.eps", "error.delta_j", "error.scope"});
      add_system();
      break;
    case ExperimentKind::Bb1Scaling:
      add({"bb1.eps_min", "bb1.eps_max", "bb1.points"});
      add_system();
      break;
    case ExperimentKind::Spectra:
      add({"oracle.k", "oracle.matching", "oracle.phase_deg", "order.max", "order.cap",
           "pulse.styles", "error.eps", "error.delta_j", "error.scope", "spectra.step_hz",
           "spectra.half_points"});
      add_system();
      break;
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::set<std::string> all_known_keys() {
  std::set<std::string> all;
  for (const auto& info : experiment_catalog()) {
    for (auto& k : keys_for(info.kind)) all.insert(k);
  }
  return all;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += ",";
    s += fmt::format("{:.17g}", x);
  }
  return s;
}

void apply_defaults(ExperimentConfig& c) {
  switch (c.kind) {
    case ExperimentKind::Table1:
      c.order_max = 4;
      break;
    case ExperimentKind::K2Curves:
      c.k = 2;
      break;
    case ExperimentKind::Robustness:
      c.eps = {0.0, 0.02, 0.05, 0.1};
      c.delta_j = {0.0, 0.01, 0.02, 0.05};
      c.scope = RfErrorScope::UGatesOnly;
      break;
    default:
      break;
  }
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog = {
      {ExperimentKind::Table1, "table1", "success probabilities and query counts, r = 0..4"},
      {ExperimentKind::K1Curves, "k1-curves", "pulse-level P vs r for the single-match oracles"},
      {ExperimentKind::K2Curves, "k2-curves", "pulse-level P vs r for the two-match oracles"},
      {ExperimentKind::Robustness, "robustness", "cube-law residuals over an (eps, deltaJ) grid"},
      {ExperimentKind::Bb1Scaling, "bb1-scaling", "naive vs BB1 90-degree pulse infidelity"},
      {ExperimentKind::Spectra, "spectra", "simulated 1H doublet spectra, r = 0..3 and r -> inf"},
  };
  return catalog;
}

std::string_view experiment_name(ExperimentKind kind) {
  for (const auto& info : experiment_catalog()) {
    if (info.kind == kind) return info.name;
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (const auto& info : experiment_catalog()) {
    if (info.name == name) return info.kind;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<std::string> applicable_keys(ExperimentKind kind) { return keys_for(kind); }

std::string ExperimentConfig::canonical() const {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("experiment.name", std::string(experiment_name(kind)));
  line("oracle.k", std::to_string(k));
  line("oracle.phase", fmt::format("{:.17g}", phase));
  std::string ids;
  for (const auto& o : oracles) ids += (ids.empty() ? "" : "|") + o.id();
  line("oracle.matching", ids);
  line("order.min", std::to_string(order_min));
  line("order.max", std::to_string(order_max));
  line("order.cap", std::to_string(order_cap));
  std::string st;
  for (auto s : styles) st += (st.empty() ? "" : ",") + std::string(style_name(s));
  line("pulse.styles", st);
  line("error.eps", join_numbers(eps));
  line("error.delta_j", join_numbers(delta_j));
  line("error.scope", scope == RfErrorScope::AllPulses ? "all" : "u-gates");
  line("system.coupling_hz", fmt::format("{:.17g}", system.coupling_hz));
  line("system.t90_s", fmt::format("{:.17g}", system.t90_s));
  line("system.t2_h_s", fmt::format("{:.17g}", system.t2_h_s));
  line("system.t2_c_s", fmt::format("{:.17g}", system.t2_c_s));
  line("bb1.eps_min", fmt::format("{:.17g}", bb1_eps_min));
  line("bb1.eps_max", fmt::format("{:.17g}", bb1_eps_max));
  line("bb1.points", std::to_string(bb1_points));
  line("spectra.step_hz", fmt::format("{:.17g}", spectra_step_hz));
  line("spectra.half_points", std::to_string(spectra_half_points));
  return out;
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_config(ExperimentKind kind, std::string_view ini_text,
                              const std::vector<std::string>& overrides) {
  namespace pt = boost::property_tree;
  std::map<std::string, std::string> values;
  {
    pt::ptree tree;
    std::istringstream in{std::string(ini_text)};
    try {
      pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(std::string("config syntax: ") + e.what());
    }
    for (const auto& [section, node] : tree) {
      if (node.empty()) {
        values[section] = trim(node.data());
        continue;
      }
      for (const auto& [key, leaf] : node) {
        if (!leaf.empty()) throw ConfigError("nested keys are not supported");
        values[section + "." + key] = trim(leaf.data());
      }
    }
  }
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + ov + "' is not key=value");
    values[trim(std::string_view(ov).substr(0, eq))] = trim(std::string_view(ov).substr(eq + 1));
  }

  const auto known = all_known_keys();
  const auto applicable = keys_for(kind);
  for (const auto& [key, value] : values) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
    if (!std::binary_search(applicable.begin(), applicable.end(), key)) {
      throw ConfigError("key '" + key + "' does not apply to experiment '" +
                        std::string(experiment_name(kind)) + "'");
    }
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };

  ExperimentConfig c;
  c.kind = kind;
  apply_defaults(c);

  if (auto v = get("experiment.name"); v && *v != experiment_name(kind)) {
    throw ConfigError("config names experiment '" + *v + "' but '" +
                      std::string(experiment_name(kind)) + "' was requested");
  }
  if (auto v = get("output.dir")) c.output_dir = *v;
  if (auto v = get("order.cap")) c.order_cap = parse_int("order.cap", *v);
  if (auto v = get("order.min")) c.order_min = parse_int("order.min", *v);
  if (auto v = get("order.max")) c.order_max = parse_int("order.max", *v);
  if (c.order_cap < 0 || c.order_min < 0 || c.order_min > c.order_max || c.order_max > c.order_cap) {
    throw ConfigError(fmt::format("order range {}..{} is invalid for depth cap {}", c.order_min,
                                  c.order_max, c.order_cap));
  }

  if (auto v = get("oracle.k")) {
    const int k = parse_int("oracle.k", *v);
    if (k != 1 && k != 2) throw ConfigError("oracle.k must be 1 or 2");
    c.k = static_cast<std::size_t>(k);
  }
  if (auto v = get("oracle.phase_deg")) {
    c.phase = parse_double("oracle.phase_deg", *v) * std::numbers::pi / 180.0;
    if (c.phase == 0.0 || !(std::abs(c.phase) < 2.0 * std::numbers::pi)) {
      throw ConfigError("oracle.phase_deg must be nonzero and inside (-360, 360)");
    }
  }
  try {
    const auto sel = get("oracle.matching");
    if (!sel || *sel == "all") {
      c.oracles = OracleSpec::all_with_k(2, c.k, c.phase);
    } else {
      for (const auto& group : split(*sel, '|')) {
        OracleSpec o(2, split(group, '+'), c.phase);
        if (o.k() != c.k) {
          throw ConfigError("oracle '" + group + "' does not have k = " + std::to_string(c.k));
        }
        c.oracles.push_back(o);
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("oracle.matching: ") + e.what());
  }

  if (auto v = get("pulse.styles")) {
    c.styles.clear();
    for (const auto& s : split(*v, ',')) {
      try {
        c.styles.push_back(parse_style(s));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (auto v = get("error.eps")) c.eps = parse_list("error.eps", *v);
  if (auto v = get("error.delta_j")) c.delta_j = parse_list("error.delta_j", *v);
  for (double x : c.eps) {
    if (!(std::abs(x) < 1.0)) throw ConfigError("error.eps values must satisfy |eps| < 1");
  }
  for (double x : c.delta_j) {
    if (!(std::abs(x) < 1.0)) throw ConfigError("error.delta_j values must satisfy |dJ| < 1");
  }
  if (auto v = get("error.scope")) {
    if (*v == "all") {
      c.scope = RfErrorScope::AllPulses;
    } else if (*v == "u-gates") {
      c.scope = RfErrorScope::UGatesOnly;
    } else {
      throw ConfigError("error.scope must be 'all' or 'u-gates'");
    }
  }

  if (auto v = get("system.coupling_hz")) c.system.coupling_hz = parse_double("system.coupling_hz", *v);
  if (auto v = get("system.t90_s")) c.system.t90_s = parse_double("system.t90_s", *v);
  if (auto v = get("system.t2_h_s")) c.system.t2_h_s = parse_double("system.t2_h_s", *v);
  if (auto v = get("system.t2_c_s")) c.system.t2_c_s = parse_double("system.t2_c_s", *v);
  try {
    c.system.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }

  if (auto v = get("bb1.eps_min")) c.bb1_eps_min = parse_double("bb1.eps_min", *v);
  if (auto v = get("bb1.eps_max")) c.bb1_eps_max = parse_double("bb1.eps_max", *v);
  if (auto v = get("bb1.points")) c.bb1_points = parse_int("bb1.points", *v);
  if (!(c.bb1_eps_min >= 1e-3 && c.bb1_eps_max <= 1e-1 && c.bb1_eps_min < c.bb1_eps_max) ||
      c.bb1_points < 2) {
    throw ConfigError("bb1 grid must satisfy 1e-3 <= eps_min < eps_max <= 1e-1 with >= 2 points");
  }

  if (auto v = get("spectra.step_hz")) c.spectra_step_hz = parse_double("spectra.step_hz", *v);
  if (auto v = get("spectra.half_points")) {
    c.spectra_half_points = parse_int("spectra.half_points", *v);
  }
  if (!(c.spectra_step_hz > 0.0) || c.spectra_half_points < 1) {
    throw ConfigError("spectra grid needs a positive step and at least one point per side");
  }
  if (kind == ExperimentKind::Spectra &&
      (c.styles.size() != 1 || c.eps.size() != 1 || c.delta_j.size() != 1)) {
    throw ConfigError("spectra takes a single pulse style and a single error point");
  }
  return c;
}

ExperimentConfig load_config(ExperimentKind kind, const std::string& path,
                             const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(kind, buffer.str(), overrides);
}

}  // namespace fpsearch
