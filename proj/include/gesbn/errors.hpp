#pragma once

#include <stdexcept>
#include <string>

namespace gesbn {

// Malformed graph: cycles, missing edges, invalid completed PDAGs.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sampling could not satisfy its contract (e.g. selection event too rare).
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gesbn
