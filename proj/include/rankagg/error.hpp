#pragma once

#include <stdexcept>
#include <string>

namespace rankagg {

/// Raised for invalid input data or violated preconditions. The CLI maps it
/// to the data/validation exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rankagg
