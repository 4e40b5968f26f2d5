// Copyright 2026 The qnl Authors
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
#pragma once

#include <stdexcept>
#include <string>

namespace qnl {

/// Input that violates a documented precondition: wrong dimension, non-unit
/// vector, out-of-range family parameter, non-physical density matrix.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A quantity is undefined for the given input (e.g. K for a PPT state, a
/// q-bound in the detection regime). Distinct from InvalidInput so callers can
/// report "not applicable" instead of failing.
class NotApplicable : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

} // namespace qnl
