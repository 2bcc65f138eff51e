// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mmbeam {

// Invalid experiment or model configuration (bad geometry, empty codebook,
// inconsistent powers, malformed config file).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Combiner correlation matrix is numerically singular (duplicate UE beams).
class SingularCombinerError : public std::runtime_error {
 public:
  explicit SingularCombinerError(const std::string& what) : std::runtime_error(what) {}
};

// Operands with incompatible shapes.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mmbeam
