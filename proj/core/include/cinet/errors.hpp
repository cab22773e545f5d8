#pragma once

#include <stdexcept>
#include <string>

namespace cinet {

// Base for every error the library raises on its own.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range configuration and parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Overflow, degenerate likelihood mass, clipped profiles, bad fits.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Decoding was requested for a modality that was not stimulated.
class ModalityAbsentError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace cinet
