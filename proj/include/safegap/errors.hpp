#pragma once

#include <stdexcept>
#include <string>

namespace safegap {

// Invalid or inconsistent configuration. The message names the offending
// field where one exists.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not produce a result (e.g. an unattainable
// calibration target).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading configuration or writing results failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace safegap
