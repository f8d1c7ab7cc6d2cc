#pragma once

#include <stdexcept>
#include <string>

namespace etflab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument values or mismatched shapes. The CLI maps these to exit code 1.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The requested object needs more ambient dimensions (simplex ETF needs m >= n - 1).
class InfeasibleDimensionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Argument outside the mathematical domain of a function (e.g. |t| > 1 for C_k).
class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Gegenbauer machinery needs lambda > 0, i.e. m >= 3.
class UnsupportedDimensionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Quadrature or another iterative numeric procedure failed to converge. Exit code 2.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace etflab
