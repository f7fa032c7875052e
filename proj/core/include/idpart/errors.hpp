#pragma once

#include <stdexcept>
#include <string>

namespace idpart {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not fit together: slot counts, basis dimensions, matrix sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Inputs that are well-formed but physically or mathematically invalid
// (non-unitary matrix, zero-norm vector, Pauli violation, sector violation).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Desk-scale caps on dense dimensions or enumeration sizes.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed text input (quasi-function symbols).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace idpart
