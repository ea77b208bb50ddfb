#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plaut {

/// Base class of every error raised by the library. `code()` is a stable,
/// machine-parsable identifier used by the CLI in structured mode.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position,
             std::string code = "parse_error")
      : Error(std::move(code),
              message + " at position " + std::to_string(position)),
        position_(position),
        detail_(message) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

class FieldMismatch : public Error {
 public:
  explicit FieldMismatch(const std::string& message)
      : Error("field_mismatch", message) {}
};

class ArityMismatch : public Error {
 public:
  explicit ArityMismatch(const std::string& message)
      : Error("arity_mismatch", message) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division_by_zero", "division by zero") {}
};

class DegreeOverflow : public Error {
 public:
  DegreeOverflow() : Error("degree_overflow", "exponent exceeds 65535") {}
};

class NotAnAutomorphism : public Error {
 public:
  explicit NotAnAutomorphism(const std::string& reason)
      : Error("not_an_automorphism", "not an automorphism: " + reason) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& message)
      : Error("degenerate_input", message) {}
};

class InvalidWord : public Error {
 public:
  explicit InvalidWord(const std::string& message)
      : Error("invalid_word", message) {}
};

class NotTriangularizable : public Error {
 public:
  explicit NotTriangularizable(const std::string& message)
      : Error("not_nilpotent_or_not_triangularizable", message) {}
};

class SampleNotInEn : public Error {
 public:
  explicit SampleNotInEn(const std::string& message)
      : Error("sample_not_in_en", message) {}
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error("config_error", field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A broken internal invariant (e.g. the degree-reduction budget was
/// exceeded). Never used to report a domain verdict.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message)
      : Error("internal_error", message) {}
};

}  // namespace plaut
