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

#include "bellfield/bell_model.hpp"

#include <stdexcept>

#include "bellfield/errors.hpp"

namespace bellfield::bell {

namespace {

const GradedCoeff& alpha() {
  static const GradedCoeff a = GradedCoeff::alpha();
  return a;
}

const GradedCoeff& beta() {
  static const GradedCoeff b = GradedCoeff::beta();
  return b;
}

}  // namespace

ChannelVars ChannelVars::for_label(std::string_view label) {
  const std::string p(label);
  return {p, p + ".gamma_b", p + ".gamma_b_minus", p + ".gamma_C", p + ".gamma_W"};
}

void Mrf3Params::validate_numeric() const {
  if (!(beta > 0.0 && beta <= 0.1)) throw std::invalid_argument("beta must lie in (0, 0.1]");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (sigma > kMaxSigma) throw SigmaTooCoarse("sigma = " + std::to_string(sigma) + " exceeds pi/16");
  if (grid_n < kMinGridSize) throw std::invalid_argument("grid_n must be at least 256");
}

// ---------------------------------------------------------------------------
// Features

mrf::NodeFeature feature_source() {
  return {"source", {}, [](std::span<const int>) { return DistFn::constant(1.0); }};
}

double source_weight(int gamma_left, int gamma_right) {
  return (gamma_left == 1 && gamma_right == 1) ? 1.0 : 0.0;
}

mrf::NodeFeature feature_external_detector(const ChannelVars& vars) {
  return {vars.label + ".counter",
          {vars.gamma_C, vars.gamma_W},
          [](std::span<const int> v) {
            if (v[0] == 0 && v[1] == 0) return DistFn::constant(1.0);
            return DistFn::constant(alpha());
          }};
}

mrf::NodeFeature feature_hidden_detector(const ChannelVars& vars) {
  return {vars.label + ".absorber_minus",
          {vars.gamma_b_minus},
          [](std::span<const int> v) {
            if (v[0] == 0) return DistFn::constant(1.0);
            return DistFn::constant(alpha() * beta() * 2.0);
          }};
}

mrf::NodeFeature feature_idle_hidden_detector(std::string_view label) {
  return {std::string(label) + ".absorber_plus", {}, [](std::span<const int>) {
            return DistFn::constant(1.0);
          }};
}

mrf::NodeFeature feature_entry_surface(const ChannelVars& vars, PolAngle setting) {
  return {vars.label + ".entry_surface",
          {vars.gamma_b, vars.gamma_b_minus},
          [setting](std::span<const int> v) {
            const int through = v[0];
            const int diverted = v[1];
            if (through == diverted) return DistFn::zero();
            if (through == 1) {
              DistFn f = DistFn::atom(setting);
              f += DistFn::cos_squared(setting, beta());
              return f;
            }
            DistFn f = DistFn::atom(setting.orthogonal());
            f += DistFn::sin_squared(setting, beta());
            return f;
          }};
}

mrf::NodeFeature feature_exit_surface(const ChannelVars& vars, const ModelOptions& options) {
  return {vars.label + ".exit_surface",
          {vars.gamma_b, vars.gamma_C, vars.gamma_W},
          [options](std::span<const int> v) {
            const int through = v[0];
            const int circular = v[1] + v[2];
            if (circular == 2) return DistFn::zero();
            if (through == 1) {
              if (circular == 1) return DistFn::constant(beta());
              return DistFn::constant(options.unconverted_exit_weight);
            }
            if (circular == 0) return DistFn::constant(1.0);
            return options.literal_exit_table ? DistFn::constant(beta()) : DistFn::zero();
          }};
}

std::vector<mrf::NodeFeature> add_channel(mrf::ScenarioGraph& graph, std::string_view label,
                                          PolAngle setting, const ModelOptions& options) {
  const ChannelVars vars = ChannelVars::for_label(label);
  graph.add_binary(vars.gamma_b);
  graph.add_binary(vars.gamma_b_minus);
  graph.add_binary(vars.gamma_C);
  graph.add_binary(vars.gamma_W);
  return {feature_entry_surface(vars, setting), feature_hidden_detector(vars),
          feature_idle_hidden_detector(label), feature_exit_surface(vars, options),
          feature_external_detector(vars)};
}

mrf::ScenarioGraph build_bell_graph(const Mrf3Params& params) {
  mrf::ScenarioGraph graph;
  graph.add_shared_angle(std::string(kThetaName));
  auto left = add_channel(graph, "L", params.theta_a, params.options);
  auto right = add_channel(graph, "R", params.theta_b, params.options);
  for (auto& f : left) graph.add_feature(std::move(f));
  for (auto& f : right) graph.add_feature(std::move(f));
  return graph;
}

mrf::EventPredicate channel_detection(std::string_view label) {
  const ChannelVars vars = ChannelVars::for_label(label);
  return {"D_" + std::string(label),
          {vars.gamma_C, vars.gamma_W},
          [vars](const mrf::Scenario& s) { return s.get(vars.gamma_C) == 1 || s.get(vars.gamma_W) == 1; }};
}

mrf::EventPredicate double_detection() {
  const auto left = channel_detection("L");
  const auto right = channel_detection("R");
  std::vector<std::string> deps = left.depends_on;
  deps.insert(deps.end(), right.depends_on.begin(), right.depends_on.end());
  return {"D", deps, [left, right](const mrf::Scenario& s) { return left(s) && right(s); }};
}

ChannelSums channel_sums(PolAngle setting) {
  const GradedCoeff two_ab = alpha() * beta() * 2.0;
  ChannelSums out;
  out.plus = DistFn::atom(setting, two_ab);
  out.plus += DistFn::cos_squared(setting, two_ab * beta());
  out.minus = DistFn::atom(setting.orthogonal(), two_ab);
  out.minus += DistFn::sin_squared(setting, two_ab * beta());
  return out;
}

CoincidenceResult coincidence_probability(const Mrf3Params& params, EvalMode mode) {
  const mrf::ScenarioGraph graph = build_bell_graph(params);
  const mrf::EventPredicate d = double_detection();
  CoincidenceResult out;
  out.mode = mode;
  if (mode == EvalMode::regularized) {
    params.validate_numeric();
    const auto r = mrf::event_probability_regularized(
        graph, d, {params.sigma, params.grid_n, {params.alpha, params.beta}});
    out.numerator = GradedCoeff::constant(r.numerator);
    out.denominator = GradedCoeff::constant(r.denominator);
    out.probability = r.probability;
    return out;
  }
  mrf::enumerate_nonzero(graph, [&](const mrf::Scenario& s, const DistFn& p) {
    const GradedCoeff w = dist_integrate(p);
    out.denominator += w;
    if (d(s)) out.numerator += w;
  });
  if (out.denominator.is_zero()) throw ZeroPartition("Bell graph has zero partition function");
  out.probability = coeff_ratio_limit(out.numerator, out.denominator);
  return out;
}

}  // namespace bellfield::bell
