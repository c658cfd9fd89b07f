#include "isexplore/errors.hpp"

namespace isexplore {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::TrailingData: return "TrailingData";
    case ErrorCode::NonFiniteData: return "NonFiniteData";
    case ErrorCode::InsufficientDuration: return "InsufficientDuration";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TrackMismatch: return "TrackMismatch";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::BadComponentCount: return "BadComponentCount";
    case ErrorCode::BadClusterCount: return "BadClusterCount";
    case ErrorCode::TooFewLandmarks: return "TooFewLandmarks";
    case ErrorCode::SignalTooShort: return "SignalTooShort";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
  }
  return "Unknown";
}

bool is_track_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::ValidationError:
    case ErrorCode::BadMagic:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::UnknownKind:
    case ErrorCode::TruncatedPayload:
    case ErrorCode::TrailingData:
    case ErrorCode::NonFiniteData:
      return true;
    default:
      return false;
  }
}

}  // namespace isexplore
