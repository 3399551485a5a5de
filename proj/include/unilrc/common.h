#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace unilrc {

using Block = std::vector<std::uint8_t>;
using BlockIndex = std::size_t;

// Invalid code parameters or an unsupported request for a code family.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An erasure pattern (or linear system) that cannot be solved.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate inputs to the reliability model.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unilrc
