#pragma once

#include <stdexcept>
#include <string>

namespace semnet {

// Raised for invalid input data or a stage that cannot proceed.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semnet
