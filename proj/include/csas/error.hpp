#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csas {

enum class ErrorCode {
  // validation
  InvalidArgument,
  NonSampledAngle,
  OffGridLag,
  InvalidLags,
  WindowTooNarrow,
  AlignedGroups,
  EmptyTarget,
  DegenerateCloud,
  DimensionMismatch,
  WindowExceedsExcursion,
  // data format
  BadMagic,
  VersionUnsupported,
  TruncatedPayload,
  InconsistentHeader,
  MalformedText,
  // resources / environment
  MatrixTooLarge,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

bool is_format_error(ErrorCode code) noexcept;

}  // namespace csas
