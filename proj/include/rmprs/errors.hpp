#pragma once

#include <stdexcept>
#include <string>

namespace rmprs {

// Base of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed parameters that violate an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Arithmetic attempted between elements owned by different fields.
class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("elements belong to different fields") {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in finite field") {}
};

// A basis supplied to an extension map is linearly dependent over the base field.
class SingularBasis : public Error {
 public:
  using Error::Error;
};

// The requested list-decoding radius is outside what Guruswami-Sudan can guarantee.
class RadiusUnachievable : public Error {
 public:
  using Error::Error;
};

class NotACodeword : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; indicates a corrupted object.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmprs
