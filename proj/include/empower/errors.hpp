#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

#include <stdexcept>
#include <string>

namespace empower {

/// Malformed numeric input: a probability vector or matrix that is not normalized.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (e.g. an action the embodiment lacks).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured sequence budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or inconsistent scenario / snapshot / channel file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace empower
