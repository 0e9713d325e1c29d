#pragma once

#include <stdexcept>
#include <string>

namespace vocabport {

/// Broad failure class. The CLI maps it onto its exit-code contract.
enum class ErrorKind {
  kValidation,  // malformed input, violated invariant, bad configuration
  kIo,          // file could not be opened, read, or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace vocabport
