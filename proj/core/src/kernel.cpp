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

#include "bellfield/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "bellfield/pol_angle.hpp"

namespace bellfield {

WrappedGaussian::WrappedGaussian(double sigma)
    : sigma_(sigma), norm_(1.0 / (sigma * std::sqrt(2.0 * kPi))) {
  if (!(sigma > 0.0)) throw std::invalid_argument("kernel width must be positive");
}

double WrappedGaussian::operator()(double offset) const {
  // Centre the offset in [-pi/2, pi/2); three images cover sigma <= pi/4.
  const double x = reduce_mod_pi(offset + kHalfPi) - kHalfPi;
  double sum = 0.0;
  for (int m = -2; m <= 2; ++m) {
    const double y = (x + m * kPi) / sigma_;
    sum += std::exp(-0.5 * y * y);
  }
  return norm_ * sum;
}

KernelPtr make_wrapped_gaussian(double sigma) {
  return std::make_shared<WrappedGaussian>(sigma);
}

}  // namespace bellfield
