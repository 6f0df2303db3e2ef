#pragma once

#include <stdexcept>

namespace igmd {

// Malformed input text or invalid enum spellings. CLI maps this to exit code 2.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric failure: rank deficiency, domain violations, non-finite values.
// CLI maps this (and any other runtime failure) to exit code 1.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace igmd
