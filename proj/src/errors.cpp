#include "pgg/errors.hpp"

namespace pgg {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Validation: return "validation";
    case ErrorCategory::State: return "state";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Gateway: return "gateway";
    case ErrorCategory::Io: return "io";
  }
  return "unknown";
}

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MissingKey: return "missing_key";
    case ParseErrorKind::NotAnInteger: return "not_an_integer";
    case ParseErrorKind::OutOfRange: return "out_of_range";
    case ParseErrorKind::Unparseable: return "unparseable";
  }
  return "unknown";
}

const char* to_string(GatewayErrorKind kind) {
  switch (kind) {
    case GatewayErrorKind::Auth: return "auth";
    case GatewayErrorKind::RateLimited: return "rate_limited";
    case GatewayErrorKind::Timeout: return "timeout";
    case GatewayErrorKind::Provider: return "provider";
    case GatewayErrorKind::FixtureMissing: return "fixture_missing";
    case GatewayErrorKind::HashMismatch: return "hash_mismatch";
  }
  return "unknown";
}

}  // namespace pgg
