#pragma once

#include <stdexcept>
#include <string>

namespace bf {

// Base for every error raised by the library. Callers that only care about
// "something in bf failed" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (SWC, barcode files, config files).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A tree or barcode that violates a structural invariant.
class InvalidTree : public Error {
 public:
  using Error::Error;
};

// Barcode outside the strict set: tied endpoints or no containing bar.
class NotStrict : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

// Enumeration would exceed the caller-provided cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace bf
