// Copyright 2026 The parity-proxy Authors
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

#ifndef PARITY_ERRORS_H
#define PARITY_ERRORS_H

#include <stdexcept>
#include <string>

namespace parity {

/// Raised when moments violate tau^2 - 4|u|^2 >= 1/4 or a radicand goes nonpositive.
struct UnphysicalMomentsError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when a Fock truncation loses more probability than the declared tail budget.
struct CutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a sensitivity ratio has a vanishing denominator.
struct UndefinedSensitivityError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace parity

#endif
