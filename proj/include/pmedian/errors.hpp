#pragma once

#include <stdexcept>
#include <string>

namespace pmedian {

// Malformed input file (CSV/JSON/cache syntax, checksum, truncation).
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed input that violates an invariant (duplicate ids,
// p out of range, negative population, bad config value, ...).
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pmedian
