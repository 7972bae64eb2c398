#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boxmerge {

enum class ErrorCode {
  InvalidArgument,
  CoordinateOutOfRange,
  MinAxisTooSmall,
  ScaleExceedsAxis,
  OddScale,
  EmptyPointSet,
  InsufficientPoints,
  ImageTooSmall,
  AllTransparent,
  UnsupportedFormat,
  DecodeError,
  BitDepthUnsupported,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ErrorCode::MinAxisTooSmall: return "MinAxisTooSmall";
    case ErrorCode::ScaleExceedsAxis: return "ScaleExceedsAxis";
    case ErrorCode::OddScale: return "OddScale";
    case ErrorCode::EmptyPointSet: return "EmptyPointSet";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::AllTransparent: return "AllTransparent";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::BitDepthUnsupported: return "BitDepthUnsupported";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stage and exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace boxmerge
