#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad JSON, world index past the frame, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A search would exceed its configured exhaustion cap; the operation refuses
/// instead of silently degrading.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A checked precondition (e.g. monotonicity of a term on a frame) failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::vector<std::string> expected,
              const std::string& found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace modal
