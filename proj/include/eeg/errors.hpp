#pragma once

#include <stdexcept>

namespace eeg {

// Malformed caller input: bad edge ids, negative masses, out-of-range args.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A measure or run configuration that cannot be used (zero mass, bad field).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A probability whose defining ratio has a zero denominator.
class UndefinedProbability : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Internal consistency check failed; indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eeg
