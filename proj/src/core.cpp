#include "floquet/core.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "floquet/error.hpp"

namespace floquet {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Haldane:
      return "haldane";
    case ModelKind::BrickWall:
      return "brickwall";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "haldane") return ModelKind::Haldane;
  if (lowered == "brickwall" || lowered == "brick-wall" || lowered == "brick_wall") {
    return ModelKind::BrickWall;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model kind '" + std::string(text) + "'");
}

Spinor lower_eigenvector(const Hermitian2& h) {
  const double e = h.splitting();
  // (H + e) v = 0; pick whichever row is better conditioned.
  Spinor v = h.z >= 0.0 ? Spinor{Complex(h.x, -h.y), Complex(-(h.z + e), 0.0)}
                        : Spinor{Complex(e - h.z, 0.0), Complex(-h.x, -h.y)};
  const double n = v.norm();
  return (1.0 / n) * v;
}

Spinor fix_global_phase(const Spinor& v, double tolerance) {
  const Complex lead = std::abs(v.first) > tolerance ? v.first : v.second;
  if (std::abs(lead) <= tolerance) return v;
  const Complex rotation = std::conj(lead) / std::abs(lead);
  return rotation * v;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GapClosed: return "GapClosed";
    case ErrorCode::DegenerateStart: return "DegenerateStart";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NumericalBlowup: return "NumericalBlowup";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NyquistViolation: return "NyquistViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonIntegerChern: return "NonIntegerChern";
  }
  return "Unknown";
}

}  // namespace floquet
