#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perfkern {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (instance, representation or certificate files).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid arguments: out-of-range vertices, self-loops, duplicates.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// The input is well formed but outside the class an algorithm accepts.
// `witness` carries the offending vertices (a hole, a claw, a directed cycle...).
class PreconditionError : public Error {
 public:
  PreconditionError(std::string kind, std::string message, std::vector<int> witness = {})
      : Error(message), kind_(std::move(kind)), witness_(std::move(witness)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::vector<int>& witness() const noexcept { return witness_; }

 private:
  std::string kind_;
  std::vector<int> witness_;
};

// A defensive re-check failed. Signals a bug or a silently violated precondition.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace perfkern
