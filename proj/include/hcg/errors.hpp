#pragma once

#include <stdexcept>
#include <string>

namespace hcg {

// Invalid parameters or malformed inputs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A model whose constraints cannot be satisfied.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size cap or attempt cap was exceeded.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hcg
