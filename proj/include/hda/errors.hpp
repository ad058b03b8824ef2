#pragma once

#include <stdexcept>
#include <string>

namespace hda {

// Base class for all errors raised by this library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error in an input text, with a 1-based position when known.
class parse_error : public error {
 public:
  explicit parse_error(const std::string& what)
      : error(what), line_(0), col_(0) {}

  parse_error(const std::string& what, int line, int col)
      : error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Structural invariant failure: invalid cube data, bad graph marks,
// malformed schema payloads.
class validation_error : public error {
 public:
  using error::error;
};

// Work refused because it would exceed a configured cap.
class resource_limit_error : public error {
 public:
  using error::error;
};

// File read/write failure at a tool boundary.
class io_error : public error {
 public:
  using error::error;
};

}  // namespace hda
