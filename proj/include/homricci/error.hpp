#pragma once

#include <stdexcept>
#include <string>

namespace homricci {

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotUnimodular : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or out-of-domain run/sweep configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace homricci
