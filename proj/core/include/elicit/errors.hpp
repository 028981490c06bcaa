#pragma once

#include <stdexcept>
#include <string>

namespace elicit {

/// Index outside the outcome or expert range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A contract or run configuration that is well-formed but not allowed,
/// such as an alpha outside the arbitrage-free range without permissive mode.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed user input (unparseable numbers, mismatched profiles).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace elicit
