#pragma once

#include <stdexcept>
#include <string>

namespace pgg {

enum class ErrorCategory { Config, Validation, State, Parse, Gateway, Io };

const char* to_string(ErrorCategory category);

/// Base of every error thrown by this library. The category drives the CLI
/// exit code and lets callers coarsely classify failures without catching
/// each concrete type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string message)
      : std::runtime_error(std::move(message)), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

struct ConfigError : Error {
  explicit ConfigError(std::string m) : Error(ErrorCategory::Config, std::move(m)) {}
};

struct ValidationError : Error {
  explicit ValidationError(std::string m) : Error(ErrorCategory::Validation, std::move(m)) {}
};

struct StateError : Error {
  explicit StateError(std::string m) : Error(ErrorCategory::State, std::move(m)) {}
};

struct IoError : Error {
  explicit IoError(std::string m) : Error(ErrorCategory::Io, std::move(m)) {}
};

/// A transcript line that failed to parse. line_number is 1-based.
class CorruptLineError : public Error {
 public:
  CorruptLineError(int line_number, std::string m)
      : Error(ErrorCategory::Io, std::move(m)), line_number_(line_number) {}
  int line_number() const { return line_number_; }

 private:
  int line_number_;
};

struct SchemaVersionMismatchError : Error {
  explicit SchemaVersionMismatchError(std::string m) : Error(ErrorCategory::Io, std::move(m)) {}
};

enum class ParseErrorKind { MissingKey, NotAnInteger, OutOfRange, Unparseable };

const char* to_string(ParseErrorKind kind);

/// Raised when an agent or judge response cannot be turned into a decision.
/// The kind is what the retry policy differentiates on.
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::string m)
      : Error(ErrorCategory::Parse, std::move(m)), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

enum class GatewayErrorKind { Auth, RateLimited, Timeout, Provider, FixtureMissing, HashMismatch };

const char* to_string(GatewayErrorKind kind);

class GatewayError : public Error {
 public:
  GatewayError(GatewayErrorKind kind, std::string m, int status = 0, bool transient = false)
      : Error(ErrorCategory::Gateway, std::move(m)),
        kind_(kind),
        status_(status),
        transient_(transient) {}

  GatewayErrorKind kind() const { return kind_; }
  int status() const { return status_; }
  /// Transient failures are retried within the transport policy's budget.
  bool transient() const { return transient_; }

 private:
  GatewayErrorKind kind_;
  int status_;
  bool transient_;
};

/// An agent exhausted its re-prompt budget (or its gateway failed for good).
/// play_game converts this into an invalid partial transcript.
struct AgentFailure : Error {
  explicit AgentFailure(std::string m) : Error(ErrorCategory::State, std::move(m)) {}
};

/// The judge model never produced a usable in-range score.
struct JudgeUnparseableError : Error {
  explicit JudgeUnparseableError(std::string m) : Error(ErrorCategory::Parse, std::move(m)) {}
};

}  // namespace pgg
