#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmc {

// Error taxonomy shared by the library and the CLI exit-code mapping.

// Invalid caller-supplied arguments or configuration.
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs that are structurally fine but numerically unusable
// (zero variance, all-degenerate spectra, ...).
class degenerate_input : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files; carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, std::size_t line)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")" : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Simulator states that became non-finite; carries the failing step.
class simulation_error : public std::runtime_error {
 public:
  simulation_error(const std::string& message, std::size_t step)
      : std::runtime_error(message + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Violated internal expectation; a bug in this library, not a user error.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cmc
