#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fibdiff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic misuse: mismatched fields, division by zero, degenerate radicand.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An operation's precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The prover cannot handle the input; the caller should fall back to instance verification.
class UnsupportedForProof : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace fibdiff
