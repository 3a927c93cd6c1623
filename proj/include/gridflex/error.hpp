#pragma once

#include <stdexcept>
#include <string>

namespace gridflex {

// Malformed or inconsistent input data. CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical failure the caller asked to treat as fatal. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gridflex
