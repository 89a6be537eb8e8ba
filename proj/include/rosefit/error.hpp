#pragma once

#include <stdexcept>
#include <string>

namespace rosefit {

/// Base for all library failures. The CLI maps each subclass onto a stable exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (exit code 2).
class InputError : public Error {
public:
  using Error::Error;
};

/// Too few samples to estimate the requested model (exit code 3).
class InsufficientDataError : public Error {
public:
  using Error::Error;
};

/// Rank deficiency, spec mismatch, or other numerical failure (exit code 4).
class NumericalError : public Error {
public:
  using Error::Error;
};

}  // namespace rosefit
