// Copyright 2026 The chordsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace chordsim {

/// Base class of all domain errors raised by the library. The CLI maps these
/// to exit code 1; usage errors exit with 2.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotDoubleOccurrence : SimError {
    using SimError::SimError;
};
struct SelfLoop : SimError {
    using SimError::SimError;
};
struct Disconnected : SimError {
    using SimError::SimError;
};
struct UnknownVertex : SimError {
    using SimError::SimError;
};
struct DuplicateVertex : SimError {
    using SimError::SimError;
};
struct TooLarge : SimError {
    using SimError::SimError;
};
struct BudgetExceeded : SimError {
    using SimError::SimError;
};
struct NotSkew : SimError {
    using SimError::SimError;
};
struct NotUnitary : SimError {
    using SimError::SimError;
};
struct NotUnit : SimError {
    using SimError::SimError;
};
struct OddSupport : SimError {
    using SimError::SimError;
};
struct DimensionMismatch : SimError {
    using SimError::SimError;
};
struct NegativeProbability : SimError {
    using SimError::SimError;
};
struct UnreachablePrefix : SimError {
    using SimError::SimError;
};
struct ZeroPrefixProbability : SimError {
    using SimError::SimError;
};
struct BadInput : SimError {
    using SimError::SimError;
};

}  // namespace chordsim
