#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cylknot {

enum class ErrorKind {
  DegenerateParallel,
  IndeterminateContact,
  NotTangent,
  ZeroChirality,
  DegenerateProjection,
  OrthogonalPair,
  SingularRingMatrix,
  OrderMismatch,
  InfeasibleDof,
  NoConvergence,
  ValidationFailure,
  DegenerateParams,
  ParseError,
  OrderError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateParallel: return "DegenerateParallel";
    case ErrorKind::IndeterminateContact: return "IndeterminateContact";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::ZeroChirality: return "ZeroChirality";
    case ErrorKind::DegenerateProjection: return "DegenerateProjection";
    case ErrorKind::OrthogonalPair: return "OrthogonalPair";
    case ErrorKind::SingularRingMatrix: return "SingularRingMatrix";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::InfeasibleDof: return "InfeasibleDof";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ValidationFailure: return "ValidationFailure";
    case ErrorKind::DegenerateParams: return "DegenerateParams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OrderError: return "OrderError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error. `indices()` names the cylinders / lines involved, when any.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        indices_(std::move(indices)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace cylknot
