#ifndef MOMROB_ERROR_HPP_
#define MOMROB_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace momrob {

// Bad argument or violated precondition (K > N, h = 0, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mismatched feature dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite input, non-finite gradient, or a solve that failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// CSV ingestion failure; row() is 1-based over physical lines, 0 if the
// error is not tied to a row.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : std::runtime_error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class LabelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace momrob

#endif  // MOMROB_ERROR_HPP_
