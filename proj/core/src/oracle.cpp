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

// Brute-force numeric evaluation of the two-channel model. Deliberately
// shares nothing with the graded path beyond the kernel definition: the
// feature tables are transcribed directly as grid samples.

#include <cmath>
#include <vector>

#include "bellfield/bell_model.hpp"
#include "bellfield/errors.hpp"
#include "bellfield/kernel.hpp"

namespace bellfield::bell {

namespace {

struct EntryTables {
  std::vector<double> through;   // photon continues in the crystal
  std::vector<double> diverted;  // photon sent to the hidden absorber
};

EntryTables entry_tables(PolAngle setting, double beta, double sigma, int n) {
  const WrappedGaussian kernel(sigma);
  EntryTables t{sample_atom(kernel, setting, n), sample_atom(kernel, setting.orthogonal(), n)};
  const double dx = kPi / n;
  for (int i = 0; i < n; ++i) {
    const double c = std::cos(i * dx - setting.radians());
    t.through[i] += beta * c * c;
    t.diverted[i] += beta * (1.0 - c * c);
  }
  return t;
}

struct ChannelBits {
  int through, diverted, cw, ccw;
};

// Product of the angle-independent factors of one channel, and which entry
// table (if any) the scenario selects.
double channel_constant(const ChannelBits& c, double alpha, double beta, const ModelOptions& opt,
                        const std::vector<double>** entry, const EntryTables& tables) {
  if (c.through == c.diverted) return 0.0;
  *entry = c.through ? &tables.through : &tables.diverted;
  const double hidden = c.diverted ? 2.0 * alpha * beta : 1.0;
  double exit = 0.0;
  const int circular = c.cw + c.ccw;
  if (circular == 2) exit = 0.0;
  else if (c.through) exit = circular == 1 ? beta : opt.unconverted_exit_weight;
  else exit = circular == 0 ? 1.0 : (opt.literal_exit_table ? beta : 0.0);
  const double counter = circular > 0 ? alpha : 1.0;
  return hidden * exit * counter;
}

}  // namespace

CoincidenceResult brute_force_oracle(const Mrf3Params& params) {
  params.validate_numeric();
  const int n = params.grid_n;
  const double dx = kPi / n;
  const EntryTables left = entry_tables(params.theta_a, params.beta, params.sigma, n);
  const EntryTables right = entry_tables(params.theta_b, params.beta, params.sigma, n);

  double numerator = 0.0;
  double denominator = 0.0;
  for (unsigned mask = 0; mask < 256; ++mask) {
    auto bit = [mask](int k) { return static_cast<int>((mask >> k) & 1U); };
    const ChannelBits l{bit(0), bit(1), bit(2), bit(3)};
    const ChannelBits r{bit(4), bit(5), bit(6), bit(7)};
    const std::vector<double>* l_entry = nullptr;
    const std::vector<double>* r_entry = nullptr;
    const double constant =
        channel_constant(l, params.alpha, params.beta, params.options, &l_entry, left) *
        channel_constant(r, params.alpha, params.beta, params.options, &r_entry, right);
    if (constant == 0.0) continue;
    double integral = 0.0;
    for (int i = 0; i < n; ++i) integral += (*l_entry)[i] * (*r_entry)[i];
    const double weight = constant * integral * dx;
    denominator += weight;
    const bool detected = (l.cw || l.ccw) && (r.cw || r.ccw);
    if (detected) numerator += weight;
  }
  if (denominator == 0.0) throw ZeroPartition("oracle partition function is zero");

  CoincidenceResult out;
  out.mode = EvalMode::regularized;
  out.numerator = GradedCoeff::constant(numerator);
  out.denominator = GradedCoeff::constant(denominator);
  out.probability = numerator / denominator;
  return out;
}

}  // namespace bellfield::bell
