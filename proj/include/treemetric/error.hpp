#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treemetric {

/// Base class for every error raised by the library.
class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tree text. `position()` is the byte offset where parsing stopped.
class ParseError : public TreeError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : TreeError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Inputs that parse but violate a precondition (shape, level, arity, alphabet...).
class ValidationError : public TreeError {
 public:
  using TreeError::TreeError;
};

}  // namespace treemetric
