#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace erkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input could not be parsed. Carries the 1-based line number where known.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Syntactically valid input using a feature this toolkit deliberately
/// does not support (blank nodes, language tags).
class UnsupportedFeatureError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Invalid configuration or parameter combination, detected before any work.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace erkit
