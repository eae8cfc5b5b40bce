// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>

namespace cipcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or schema violation.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Vector or matrix sizes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value the format requires to be integral is not.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

// Invalid cone construction, e.g. a non-pointed polyhedral block.
class ConeError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for this cone kind.
class UnsupportedConeError : public Error {
 public:
  using Error::Error;
};

// An enumeration or memo table would exceed its configured cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Both or neither branch of the alternative validated; an engine bug.
class InconsistentStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace cipcert
