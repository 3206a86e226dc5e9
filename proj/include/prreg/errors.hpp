#pragma once

#include <stdexcept>
#include <string>

namespace prreg {

// Problems with input data or files (bad CSV, unknown dataset, malformed
// scenario). Maps to CLI exit code 3.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures (rank deficiency, singular systems, indefinite
// curvature). Maps to CLI exit code 4.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace prreg
