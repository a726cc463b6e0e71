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

#ifndef BELLFIELD_TOOLS_CLI_HPP
#define BELLFIELD_TOOLS_CLI_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bellfield::cli {

/// Invalid configuration. The message names the offending key.
class ConfigError : public std::invalid_argument {
public:
  ConfigError(const std::string& key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Raw key=value settings; later sources override earlier ones.
using RawConfig = std::map<std::string, std::string>;

/// Flat key=value text, '#' starts a comment. Keys may use '-' or '_'.
RawConfig parse_config_text(std::string_view text);

/// Unset optionals take the experiment's defaults.
struct ExperimentConfig {
  std::string experiment;
  std::optional<std::vector<double>> angles;  // degrees
  double alpha = 1.0;
  std::optional<std::vector<double>> beta;
  std::optional<std::vector<double>> sigma;
  std::optional<int> grid_n;
  std::optional<std::string> mode;  // exact | regularized | both
  std::optional<std::vector<std::string>> models;
  std::optional<double> initial;    // malus-chain; nullopt with unpolarized
  bool unpolarized = false;
  std::string output;               // empty: stdout
  std::string format = "csv";
  bool timing = true;
};

ExperimentConfig build_config(const RawConfig& raw);

using ParamValue = std::variant<double, std::string>;

struct ResultRow {
  std::string experiment;
  std::string model;
  std::map<std::string, ParamValue> params;
  double value = 0.0;
  std::optional<double> target;
  std::optional<double> abs_error;
  double runtime_ms = 0.0;
};

/// Throws ConfigError for invalid combinations and lets NumericalError
/// escape from the models.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

/// experiment, model, sorted parameter columns, value, target, abs_error,
/// runtime_ms. Numbers use 12 significant digits.
std::string format_csv(std::span<const ResultRow> rows);
/// Array of flat row objects with the CSV field names.
std::string format_json(std::span<const ResultRow> rows);

std::string format_number(double v);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bellfield::cli

#endif  // BELLFIELD_TOOLS_CLI_HPP
