#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stabthresh {

enum class ErrorKind {
  UnboundedPolytope,
  EmptyPolytope,
  DegenerateDomain,
  ZeroMass,
  NoSections,
  NotAnticanonical,
  MissingFan,
  OutsideSupport,
  EmptySection,
  SingularBasis,
  InvalidPartition,
  EmptyCandidates,
  InvalidWeight,
  Validation,
  Parse,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::DegenerateDomain: return "DegenerateDomain";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::NoSections: return "NoSections";
    case ErrorKind::NotAnticanonical: return "NotAnticanonical";
    case ErrorKind::MissingFan: return "MissingFan";
    case ErrorKind::OutsideSupport: return "OutsideSupport";
    case ErrorKind::EmptySection: return "EmptySection";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::EmptyCandidates: return "EmptyCandidates";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `field()` is a JSON-style path
/// ("rays[2]", "candidates[0].A_X") when the error points at input data.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {})
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

inline Error validation_error(std::string field, const std::string& message) {
  return Error(ErrorKind::Validation, message, std::move(field));
}

}  // namespace stabthresh
