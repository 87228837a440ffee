#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capheight {

enum class ErrorKind {
  InvalidSet,
  UnsupportedMode,
  DegenerateSample,
  AmbiguousPoint,
  InsufficientCandidates,
  LevelUnreachable,
  UndefinedResultant,
  Undefined,
  RootConvergence,
  Coprimality,
  HypothesisViolation,
  Overlap,
  LevelTooLow,
  MonotonicityViolation,
  UnknownExperiment,
  InvalidConfig,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // message without the kind prefix, for re-throwing with added context
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSet: return "invalid-set";
    case ErrorKind::UnsupportedMode: return "unsupported-mode";
    case ErrorKind::DegenerateSample: return "degenerate-sample";
    case ErrorKind::AmbiguousPoint: return "ambiguous-point";
    case ErrorKind::InsufficientCandidates: return "insufficient-candidates";
    case ErrorKind::LevelUnreachable: return "level-unreachable";
    case ErrorKind::UndefinedResultant: return "undefined-resultant";
    case ErrorKind::Undefined: return "undefined";
    case ErrorKind::RootConvergence: return "root-convergence";
    case ErrorKind::Coprimality: return "coprimality";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::Overlap: return "overlap";
    case ErrorKind::LevelTooLow: return "level-too-low";
    case ErrorKind::MonotonicityViolation: return "monotonicity-violation";
    case ErrorKind::UnknownExperiment: return "unknown-experiment";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace capheight
