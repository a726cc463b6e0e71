// Copyright 2026 The bellfield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellfield/bell_model.hpp"
#include "bellfield/density.hpp"
#include "bellfield/errors.hpp"
#include "bellfield/mstar.hpp"
#include "bellfield/triphoton_compare.hpp"

namespace bellfield::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key, "'" + text + "' is not a finite real number");
  }
  return v;
}

std::vector<double> parse_reals(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(key, item));
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list of numbers");
  return out;
}

const std::set<std::string>& experiments() {
  static const std::set<std::string> names{"bell-sweep", "special-cases", "limit-study", "malus-chain",
                                           "triphoton-compare"};
  return names;
}

// ---------------------------------------------------------------------------
// Row helpers

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

class RowSink {
public:
  RowSink(const ExperimentConfig& config) : config_(config) {}

  template <typename F>
  void add(std::string model, std::map<std::string, ParamValue> params, std::optional<double> target, F&& compute) {
    const auto start = std::chrono::steady_clock::now();
    const double value = compute();
    ResultRow row{config_.experiment, std::move(model), std::move(params), value, target, std::nullopt,
                  config_.timing ? elapsed_ms(start) : 0.0};
    if (target) row.abs_error = std::abs(value - *target);
    rows_.push_back(std::move(row));
  }

  std::vector<ResultRow>& rows() { return rows_; }

private:
  const ExperimentConfig& config_;
  std::vector<ResultRow> rows_;
};

double bell_target(double delta_deg) {
  const double c = PolAngle::from_degrees(delta_deg).cos();
  return 0.5 * c * c;
}

bool degenerate(double delta_deg) {
  const double r = std::fmod(std::abs(delta_deg), 90.0);
  return std::min(r, 90.0 - r) < 1e-9;
}

std::string mode_of(const ExperimentConfig& c, const std::string& fallback) {
  const std::string m = c.mode.value_or(fallback);
  if (m != "exact" && m != "regularized" && m != "both") {
    throw ConfigError("mode", "expected exact, regularized or both, got '" + m + "'");
  }
  return m;
}

std::vector<std::string> models_of(const ExperimentConfig& c, std::vector<std::string> fallback,
                                   const std::set<std::string>& allowed) {
  std::vector<std::string> m = c.models.value_or(std::move(fallback));
  for (const auto& name : m) {
    if (!allowed.count(name)) throw ConfigError("models", "model '" + name + "' is not available here");
  }
  return m;
}

void require_exact_angles(const std::vector<double>& deltas) {
  for (double d : deltas) {
    if (degenerate(d)) {
      throw ConfigError("angles", "exact mode cannot evaluate the parallel/orthogonal difference " +
                                      format_number(d) + " deg; use mode=regularized");
    }
  }
}

bell::Mrf3Params bell_params(double delta_deg, double alpha, double beta, double sigma, int grid_n) {
  bell::Mrf3Params p;
  p.theta_a = PolAngle::from_degrees(delta_deg);
  p.theta_b = PolAngle(0.0);
  p.alpha = alpha;
  p.beta = beta;
  p.sigma = sigma;
  p.grid_n = grid_n;
  return p;
}

// Shared by bell-sweep and special-cases: one row per (angle, model) and,
// for grid models, per (beta, sigma).
std::vector<ResultRow> bell_rows(const ExperimentConfig& c, std::vector<double> default_angles,
                                 const std::string& default_mode, double default_sigma) {
  const auto deltas = c.angles.value_or(default_angles);
  const std::string mode = mode_of(c, default_mode);
  const bool exact = mode != "regularized";
  const bool regularized = mode != "exact";
  std::vector<std::string> fallback;
  if (exact) fallback.push_back("MRF3-exact");
  if (regularized) fallback.push_back("MRF3-oracle");
  fallback.push_back("QM");
  const auto models = models_of(c, fallback, {"MRF3-exact", "MRF3-oracle", "QM", "Mstar"});
  for (const auto& m : models) {
    if (m == "MRF3-exact" && !exact) throw ConfigError("models", "MRF3-exact needs mode exact or both");
    if (m == "MRF3-oracle" && !regularized) throw ConfigError("models", "MRF3-oracle needs mode regularized or both");
  }
  const bool any_exact = exact && std::any_of(models.begin(), models.end(), [](const std::string& m) {
                           return m == "MRF3-exact" || m == "Mstar";
                         });
  if (any_exact) require_exact_angles(deltas);
  const auto betas = c.beta.value_or(std::vector<double>{1e-3});
  const auto sigmas = c.sigma.value_or(std::vector<double>{default_sigma});
  const int grid_n = c.grid_n.value_or(kDefaultGridSize);

  RowSink sink(c);
  for (double d : deltas) {
    const double target = bell_target(d);
    const PolAngle a = PolAngle::from_degrees(d);
    const PolAngle b(0.0);
    for (const auto& m : models) {
      if (m == "QM") {
        sink.add(m, {{"delta_deg", d}}, target, [&] { return quantum::bell_coincidence_qm(a, b); });
      } else if (m == "MRF3-exact") {
        sink.add(m, {{"delta_deg", d}}, target, [&] {
          return bell::coincidence_probability(bell_params(d, c.alpha, 1e-3, 0.01, grid_n)).probability;
        });
      } else {
        if (m == "Mstar" && exact) {
          sink.add(m, {{"delta_deg", d}, {"g", std::string("exact")}}, target,
                   [&] { return quantum::mstar_bell_coincidence(a, b); });
        }
        if (!regularized) continue;
        for (double beta : betas) {
          for (double sigma : sigmas) {
            std::map<std::string, ParamValue> params{
                {"delta_deg", d}, {"beta", beta}, {"sigma", sigma}, {"grid_n", double(grid_n)}};
            if (m == "MRF3-oracle") {
              params["alpha"] = c.alpha;
              sink.add(m, params, target, [&] {
                return bell::brute_force_oracle(bell_params(d, c.alpha, beta, sigma, grid_n)).probability;
              });
            } else {
              params["g"] = std::string("regularized");
              quantum::MstarBellOptions o{quantum::GKind::regularized, beta, sigma, grid_n};
              sink.add(m, params, target, [&] { return quantum::mstar_bell_coincidence(a, b, o); });
            }
          }
        }
      }
    }
  }
  return std::move(sink.rows());
}

std::vector<ResultRow> run_bell_sweep(const ExperimentConfig& c) {
  return bell_rows(c, {10, 20, 30, 40, 50, 60, 70, 80}, "both", 0.01);
}

std::vector<ResultRow> run_special_cases(const ExperimentConfig& c) {
  return bell_rows(c, {0, 90}, "regularized", 0.005);
}

// Richardson step for an error behaving as h^order.
double richardson(double coarse, double fine, double ratio, double order) {
  const double r = std::pow(ratio, order);
  return (r * fine - coarse) / (r - 1.0);
}

std::vector<ResultRow> run_limit_study(const ExperimentConfig& c) {
  const auto deltas = c.angles.value_or(std::vector<double>{30});
  auto sigmas = c.sigma.value_or(std::vector<double>{0.04, 0.02, 0.01, 0.005});
  auto betas = c.beta.value_or(std::vector<double>{1e-3});
  if (sigmas.size() < 2 && betas.size() < 2) {
    throw ConfigError(c.sigma ? "sigma" : "beta", "limit-study needs at least two sigma or two beta values");
  }
  models_of(c, {"MRF3-oracle"}, {"MRF3-oracle"});
  std::sort(sigmas.rbegin(), sigmas.rend());
  std::sort(betas.rbegin(), betas.rend());
  const int grid_n = c.grid_n.value_or(kDefaultGridSize);

  RowSink sink(c);
  for (double d : deltas) {
    const double target = degenerate(d)
                              ? bell_target(d)
                              : bell::coincidence_probability(bell_params(d, c.alpha, 1e-3, 0.01, grid_n)).probability;
    std::map<std::pair<double, double>, double> value;  // (beta, sigma)
    for (double beta : betas) {
      for (double sigma : sigmas) {
        sink.add("MRF3-oracle",
                 {{"delta_deg", d}, {"alpha", c.alpha}, {"beta", beta}, {"sigma", sigma}, {"grid_n", double(grid_n)}},
                 target, [&] {
                   const double v = bell::brute_force_oracle(bell_params(d, c.alpha, beta, sigma, grid_n)).probability;
                   value[{beta, sigma}] = v;
                   return v;
                 });
      }
    }
    const std::string model = "MRF3-oracle-richardson";
    for (double beta : betas) {
      for (std::size_t i = 1; i < sigmas.size(); ++i) {
        const double coarse = sigmas[i - 1];
        const double fine = sigmas[i];
        sink.add(model,
                 {{"delta_deg", d}, {"beta", beta}, {"sigma", fine}, {"sigma_coarse", coarse},
                  {"extrapolation", std::string("sigma^2")}},
                 target, [&] { return richardson(value[{beta, coarse}], value[{beta, fine}], coarse / fine, 2.0); });
      }
    }
    for (double sigma : sigmas) {
      for (std::size_t i = 1; i < betas.size(); ++i) {
        const double coarse = betas[i - 1];
        const double fine = betas[i];
        sink.add(model,
                 {{"delta_deg", d}, {"beta", fine}, {"beta_coarse", coarse}, {"sigma", sigma},
                  {"extrapolation", std::string("beta")}},
                 target, [&] { return richardson(value[{coarse, sigma}], value[{fine, sigma}], coarse / fine, 1.0); });
      }
    }
  }
  return std::move(sink.rows());
}

std::vector<ResultRow> run_malus_chain(const ExperimentConfig& c) {
  const auto settings_deg = c.angles.value_or(std::vector<double>{0, 45, 90});
  models_of(c, {"QM"}, {"QM"});
  std::vector<PolAngle> settings;
  std::string label;
  for (double s : settings_deg) {
    settings.push_back(PolAngle::from_degrees(s));
    label += (label.empty() ? "" : ";") + format_number(s);
  }
  std::optional<PolAngle> initial;
  if (!c.unpolarized) initial = PolAngle::from_degrees(c.initial.value_or(0.0));

  double target = c.unpolarized ? 0.5 : 1.0;
  double prev = c.unpolarized ? settings_deg.front() : c.initial.value_or(0.0);
  for (std::size_t i = c.unpolarized ? 1 : 0; i < settings_deg.size(); ++i) {
    const PolAngle step = PolAngle::from_degrees(settings_deg[i] - prev);
    target *= step.cos() * step.cos();
    prev = settings_deg[i];
  }
  RowSink sink(c);
  sink.add("QM",
           {{"settings_deg", label},
            {"initial_deg", c.unpolarized ? ParamValue(std::string("unpolarized")) : ParamValue(c.initial.value_or(0.0))}},
           target, [&] { return quantum::malus_chain(initial, settings); });
  return std::move(sink.rows());
}

std::string order_label(const quantum::ArrivalOrder& o) {
  return std::to_string(o[0] + 1) + "-" + std::to_string(o[1] + 1) + "-" + std::to_string(o[2] + 1);
}

std::vector<ResultRow> run_triphoton_compare(const ExperimentConfig& c) {
  const auto angles = c.angles.value_or(std::vector<double>{0, 30, 60, 90, 120});
  const auto names = models_of(c, {"M", "Mstar", "MRF"}, {"M", "Mstar", "MRF"});
  std::vector<quantum::TriphotonModel> models;
  for (const auto& n : names) models.push_back(quantum::parse_model(n));
  quantum::TriphotonOptions o;
  o.alpha = c.alpha;
  if (c.beta) o.beta = c.beta->front();
  if (c.sigma) o.sigma = c.sigma->front();
  if (c.grid_n) o.grid_n = *c.grid_n;
  const auto orders = quantum::all_orders();

  std::vector<ResultRow> rows;
  for (double t1 : angles) {
    for (double t2 : angles) {
      for (double t3 : angles) {
        const std::array<PolAngle, 3> s{PolAngle::from_degrees(t1), PolAngle::from_degrees(t2),
                                        PolAngle::from_degrees(t3)};
        const auto start = std::chrono::steady_clock::now();
        const auto report = quantum::triphoton_compare(s, models, orders, o);
        const double ms = c.timing ? elapsed_ms(start) : 0.0;
        const std::map<std::string, ParamValue> base{{"theta1_deg", t1}, {"theta2_deg", t2}, {"theta3_deg", t3},
                                                     {"beta", o.beta},   {"sigma", o.sigma}, {"grid_n", double(o.grid_n)}};
        for (const auto& m : report.models) {
          const std::string name(quantum::model_name(m.model));
          for (std::size_t k = 0; k < orders.size(); ++k) {
            auto p = base;
            p["order"] = order_label(orders[k]);
            if (m.model == quantum::TriphotonModel::Mstar) p["grid_n"] = double(o.mstar_order_grid_n);
            rows.push_back({c.experiment, name, p, m.by_order[k], std::nullopt, std::nullopt, 0.0});
          }
          auto p = base;
          p["order"] = std::string("any");
          rows.push_back({c.experiment, name, p, m.value, std::nullopt, std::nullopt, 0.0});
          rows.push_back({c.experiment, name + "-order-divergence", base, m.max_order_divergence, std::nullopt,
                          std::nullopt, 0.0});
        }
        rows.push_back({c.experiment, "model-divergence", base, report.max_model_divergence, std::nullopt,
                        std::nullopt, ms});
      }
    }
  }
  return rows;
}

std::string param_text(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  return std::get<std::string>(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

RawConfig parse_config_text(std::string_view text) {
  RawConfig out;
  std::stringstream ss{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number), "expected key=value, got '" + line + "'");
    }
    out[normalize_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
  }
  return out;
}

ExperimentConfig build_config(const RawConfig& raw) {
  static const std::set<std::string> known{"experiment", "angles", "alpha",  "beta",   "sigma", "grid_n",
                                           "mode",       "models", "initial", "output", "format", "timing"};
  for (const auto& [key, value] : raw) {
    if (!known.count(key)) throw ConfigError(key, "unknown key");
  }
  ExperimentConfig c;
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    return it->second;
  };
  c.experiment = get("experiment").value_or("");
  if (c.experiment.empty()) throw ConfigError("experiment", "no experiment given");
  if (!experiments().count(c.experiment)) throw ConfigError("experiment", "unknown experiment '" + c.experiment + "'");

  if (auto v = get("angles")) c.angles = parse_reals("angles", *v);
  if (auto v = get("alpha")) {
    c.alpha = parse_real("alpha", *v);
    if (!(c.alpha > 0.0)) throw ConfigError("alpha", "must be positive");
  }
  if (auto v = get("beta")) {
    c.beta = parse_reals("beta", *v);
    for (double b : *c.beta) {
      if (!(b > 0.0 && b <= 0.1)) throw ConfigError("beta", "values must lie in (0, 0.1]");
    }
  }
  if (auto v = get("sigma")) {
    c.sigma = parse_reals("sigma", *v);
    for (double s : *c.sigma) {
      if (!(s > 0.0)) throw ConfigError("sigma", "values must be positive");
    }
  }
  if (auto v = get("grid_n")) {
    const double g = parse_real("grid_n", *v);
    if (g != std::floor(g) || g < 1 || g > 1 << 24) throw ConfigError("grid_n", "expected a positive integer");
    c.grid_n = static_cast<int>(g);
  }
  if (auto v = get("mode")) c.mode = *v;
  if (auto v = get("models")) {
    c.models = split_list(*v);
    if (c.models->empty()) throw ConfigError("models", "empty model list");
  }
  if (auto v = get("initial")) {
    if (*v == "unpolarized" || *v == "none") {
      c.unpolarized = true;
    } else {
      c.initial = parse_real("initial", *v);
    }
  }
  c.output = get("output").value_or("");
  c.format = get("format").value_or("csv");
  if (c.format != "csv" && c.format != "json") throw ConfigError("format", "expected csv or json");
  const std::string timing = get("timing").value_or("on");
  if (timing != "on" && timing != "off") throw ConfigError("timing", "expected on or off");
  c.timing = timing == "on";
  return c;
}

// ---------------------------------------------------------------------------
// Experiments

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  static const std::map<std::string, std::function<std::vector<ResultRow>(const ExperimentConfig&)>> table{
      {"bell-sweep", run_bell_sweep},
      {"special-cases", run_special_cases},
      {"limit-study", run_limit_study},
      {"malus-chain", run_malus_chain},
      {"triphoton-compare", run_triphoton_compare},
  };
  const auto it = table.find(config.experiment);
  if (it == table.end()) throw ConfigError("experiment", "unknown experiment '" + config.experiment + "'");
  return it->second(config);
}

// ---------------------------------------------------------------------------
// Output

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_csv(std::span<const ResultRow> rows) {
  std::set<std::string> keys;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.params) keys.insert(k);
  }
  std::ostringstream out;
  out << "experiment,model";
  for (const auto& k : keys) out << ',' << k;
  out << ",value,target,abs_error,runtime_ms\n";
  for (const auto& r : rows) {
    out << csv_escape(r.experiment) << ',' << csv_escape(r.model);
    for (const auto& k : keys) {
      out << ',';
      const auto it = r.params.find(k);
      if (it != r.params.end()) out << csv_escape(param_text(it->second));
    }
    out << ',' << format_number(r.value) << ',';
    if (r.target) out << format_number(*r.target);
    out << ',';
    if (r.abs_error) out << format_number(*r.abs_error);
    out << ',' << format_number(r.runtime_ms) << '\n';
  }
  return out.str();
}

std::string format_json(std::span<const ResultRow> rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["experiment"] = r.experiment;
    o["model"] = r.model;
    for (const auto& [k, v] : r.params) {
      if (const auto* d = std::get_if<double>(&v)) {
        o[k] = rounded(*d);
      } else {
        o[k] = std::get<std::string>(v);
      }
    }
    o["value"] = rounded(r.value);
    o["target"] = r.target ? nlohmann::ordered_json(rounded(*r.target)) : nlohmann::ordered_json(nullptr);
    o["abs_error"] = r.abs_error ? nlohmann::ordered_json(rounded(*r.abs_error)) : nlohmann::ordered_json(nullptr);
    o["runtime_ms"] = rounded(r.runtime_ms);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Entry point

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bellfield experiment runner"};
  std::string experiment;
  std::string config_path;
  app.add_option("experiment", experiment,
                 "bell-sweep | special-cases | limit-study | malus-chain | triphoton-compare");
  app.add_option("--config", config_path, "key=value file; flags override its keys");

  RawConfig flags;
  const std::vector<std::pair<std::string, std::string>> flag_specs{
      {"angles", "Angles in degrees, comma separated"},
      {"alpha", "Detector coupling"},
      {"beta", "Small parameter(s), comma separated"},
      {"sigma", "Regularization width(s), comma separated"},
      {"grid-n", "Grid points on [0, pi)"},
      {"mode", "exact | regularized | both"},
      {"models", "Comma-separated model tags"},
      {"initial", "malus-chain initial polarization in degrees, or 'unpolarized'"},
      {"output", "Output path (default stdout)"},
      {"format", "csv | json"},
      {"timing", "on | off; off writes runtime_ms = 0"},
  };
  std::map<std::string, std::string> values;
  for (const auto& [name, help] : flag_specs) {
    app.add_option("--" + name, values[name], help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    RawConfig raw;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("config", "cannot read '" + config_path + "'");
      std::stringstream text;
      text << in.rdbuf();
      raw = parse_config_text(text.str());
    }
    if (!experiment.empty()) raw["experiment"] = experiment;
    for (const auto& [name, help] : flag_specs) {
      if (app.count("--" + name) > 0) raw[normalize_key(name)] = values[name];
    }
    const ExperimentConfig config = build_config(raw);
    const auto rows = run_experiment(config);
    const std::string text = config.format == "json" ? format_json(rows) : format_csv(rows);
    if (config.output.empty()) {
      out << text;
    } else {
      std::ofstream file(config.output);
      if (!file) throw ConfigError("output", "cannot write '" + config.output + "'");
      file << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace bellfield::cli
