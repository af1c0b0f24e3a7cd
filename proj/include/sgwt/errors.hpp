#pragma once

#include <stdexcept>
#include <string>

namespace sgwt {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files or streams.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Out-of-range scalar parameters (b <= 1, beta < 1, grid_points < 2, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Violated preconditions between library objects (layout mismatch,
// mixed-scale blocks, strategy mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Eigensolver failures and undefined estimators.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgwt
