#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isexplore {

enum class ErrorCode {
  // track_store
  IoError,
  ValidationError,
  BadMagic,
  UnsupportedVersion,
  UnknownKind,
  TruncatedPayload,
  TrailingData,
  NonFiniteData,
  // windowing / selector
  InsufficientDuration,
  OutOfRange,
  TrackMismatch,
  BadConfig,
  // metrics
  TooFewFrames,
  BadComponentCount,
  BadClusterCount,
  TooFewLandmarks,
  SignalTooShort,
  // synth_bench
  BadSpec,
  TooFewPoints,
  ZeroVariance,
};

std::string_view to_string(ErrorCode code);

// Errors raised by the track loader/writer. The CLI maps these to exit code 3.
bool is_track_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isexplore
