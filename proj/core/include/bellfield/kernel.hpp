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

#ifndef BELLFIELD_KERNEL_HPP
#define BELLFIELD_KERNEL_HPP

#include <memory>

namespace bellfield {

/// Positive unit-mass kernel on the mod-pi circle, used to regularize delta
/// atoms. Implementations must integrate to 1 over [0, pi).
class Kernel {
public:
  virtual ~Kernel() = default;
  /// Density at a signed angular offset (radians, any real).
  virtual double operator()(double offset) const = 0;
  virtual double width() const = 0;
};

using KernelPtr = std::shared_ptr<const Kernel>;

/// Gaussian of standard deviation sigma wrapped with period pi.
class WrappedGaussian final : public Kernel {
public:
  explicit WrappedGaussian(double sigma);
  double operator()(double offset) const override;
  double width() const override { return sigma_; }

private:
  double sigma_;
  double norm_;
};

KernelPtr make_wrapped_gaussian(double sigma);

}  // namespace bellfield

#endif  // BELLFIELD_KERNEL_HPP
