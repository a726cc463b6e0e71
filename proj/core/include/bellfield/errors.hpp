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

#ifndef BELLFIELD_ERRORS_HPP
#define BELLFIELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bellfield {

/// Base of every failure that stems from the numerics of a model rather than
/// from malformed input (the CLI maps these to exit code 3).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two delta atoms at the same location were multiplied in exact mode.
class DeltaCollision : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Numerator and denominator of a graded ratio have different leading
/// alpha orders, so the limit depends on alpha.
class MismatchedAlphaOrder : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Numerator's leading beta order is below the denominator's; the ratio
/// diverges as beta goes to zero.
class DivergentLimit : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ZeroPartition : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Regularizing kernel too wide to keep atoms separated.
class SigmaTooCoarse : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Multi-angle grid would exceed the configured evaluation budget.
class GridTooCoarse : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Every branch of an ensemble was annihilated.
class ZeroEnsemble : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Matrix fails the density-matrix invariants (Hermitian, unit trace, PSD).
class NotAState : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace bellfield

#endif  // BELLFIELD_ERRORS_HPP
