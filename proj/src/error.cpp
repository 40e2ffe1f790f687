#include "csas/error.hpp"

namespace csas {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonSampledAngle: return "NonSampledAngle";
    case ErrorCode::OffGridLag: return "OffGridLag";
    case ErrorCode::InvalidLags: return "InvalidLags";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::AlignedGroups: return "AlignedGroups";
    case ErrorCode::EmptyTarget: return "EmptyTarget";
    case ErrorCode::DegenerateCloud: return "DegenerateCloud";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WindowExceedsExcursion: return "WindowExceedsExcursion";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::InconsistentHeader: return "InconsistentHeader";
    case ErrorCode::MalformedText: return "MalformedText";
    case ErrorCode::MatrixTooLarge: return "MatrixTooLarge";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_format_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadMagic:
    case ErrorCode::VersionUnsupported:
    case ErrorCode::TruncatedPayload:
    case ErrorCode::InconsistentHeader:
    case ErrorCode::MalformedText:
      return true;
    default:
      return false;
  }
}

}  // namespace csas
