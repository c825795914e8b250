#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbeu {

enum class ErrorKind {
  dimension_mismatch,
  invalid_distribution,
  nonpositive_prior,
  negative_entry,
  degenerate_system,
  not_mlr,
  cannot_strictify,
  construction_failed,
  precondition,
  retry_exhausted,
  parse,
  schema,
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::invalid_distribution: return "invalid-distribution";
    case ErrorKind::nonpositive_prior: return "nonpositive-prior";
    case ErrorKind::negative_entry: return "negative-entry";
    case ErrorKind::degenerate_system: return "degenerate-system";
    case ErrorKind::not_mlr: return "not-mlr";
    case ErrorKind::cannot_strictify: return "cannot-strictify";
    case ErrorKind::construction_failed: return "construction-failed";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::retry_exhausted: return "retry-exhausted";
    case ErrorKind::parse: return "parse";
    case ErrorKind::schema: return "schema";
  }
  return "unknown";
}

/// Every failure raised by the toolkit carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mbeu
