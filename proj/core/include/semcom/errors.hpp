#pragma once

#include <stdexcept>
#include <string>

namespace semcom {

// Invalid user input: malformed distributions, bad shapes, out-of-range
// parameters. Maps to CLI exit status 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A requested computation exceeds a hard resource guard (enumeration or
// codebook too large). Maps to CLI exit status 2.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semcom
