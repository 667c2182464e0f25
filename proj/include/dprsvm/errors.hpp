#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dprsvm {

/// Broad failure classes; the CLI maps each to its own exit code.
enum class ErrorKind {
  parse,
  dimension,
  structure,
  capacity,
  configuration,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(ErrorKind::parse, line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedKernelError : public ParseError {
 public:
  UnsupportedKernelError(int kernel_type, std::size_t line)
      : ParseError("unsupported kernel type " + std::to_string(kernel_type) + " (only 0 = linear)", line),
        kernel_type_(kernel_type) {}
  [[nodiscard]] int kernel_type() const noexcept { return kernel_type_; }

 private:
  int kernel_type_;
};

class NonFiniteError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorKind::dimension, what) {}
};

/// A value violates a structural invariant (empty model, duplicate names, count mismatch).
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(ErrorKind::structure, what) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

/// Device configuration misuse: wrong bitstream kind or target, partial before full,
/// inadmissible module, running an empty partition.
class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& what) : Error(ErrorKind::configuration, what) {}
};

}  // namespace dprsvm
