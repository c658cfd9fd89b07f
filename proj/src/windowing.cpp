#include "isexplore/windowing.hpp"

#include <cmath>
#include <string>

#include "isexplore/errors.hpp"

namespace isexplore {

namespace {

void check_window(std::size_t total_frames, const CandidateWindow& w) {
  if (w.len_frames == 0 || w.start_frame > total_frames || w.len_frames > total_frames - w.start_frame) {
    throw Error(ErrorCode::OutOfRange, "window [" + std::to_string(w.start_frame) + ", " +
                                           std::to_string(w.end_frame()) + ") exceeds " +
                                           std::to_string(total_frames) + " frames");
  }
}

}  // namespace

std::size_t seconds_to_frames(double seconds, double fps) {
  const double frames = std::round(seconds * fps);
  if (!std::isfinite(frames) || frames < 0.0) {
    throw Error(ErrorCode::BadConfig, "cannot convert " + std::to_string(seconds) + " s to frames");
  }
  return static_cast<std::size_t>(frames);
}

std::vector<CandidateWindow> build_candidates(std::size_t total_frames, double fps, double segment_len_s,
                                              double stride_s) {
  if (!(fps > 0.0) || !std::isfinite(fps)) throw Error(ErrorCode::BadConfig, "fps must be positive");
  if (!(segment_len_s > 0.0)) throw Error(ErrorCode::BadConfig, "segment length must be positive");
  if (!(stride_s > 0.0)) throw Error(ErrorCode::BadConfig, "stride must be positive");
  const std::size_t len = seconds_to_frames(segment_len_s, fps);
  const std::size_t stride = seconds_to_frames(stride_s, fps);
  if (len < 2) throw Error(ErrorCode::BadConfig, "segment must span at least 2 frames");
  if (stride < 1) throw Error(ErrorCode::BadConfig, "stride must span at least 1 frame");
  if (total_frames < len) {
    throw Error(ErrorCode::InsufficientDuration, std::to_string(total_frames) + " frames is shorter than a " +
                                                     std::to_string(len) + "-frame segment");
  }

  const std::size_t count = (total_frames - len) / stride + 1;
  std::vector<CandidateWindow> windows;
  windows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CandidateWindow w;
    w.index = i;
    w.start_frame = i * stride;
    w.len_frames = len;
    w.start_s = static_cast<double>(w.start_frame) / fps;
    w.end_s = static_cast<double>(w.end_frame()) / fps;
    windows.push_back(w);
  }
  return windows;
}

AudioWindowView slice_track(const AudioFeatureTrack& track, const CandidateWindow& window) {
  check_window(track.frame_count(), window);
  return AudioWindowView(track.data().subspan(window.start_frame * track.dim(), window.len_frames * track.dim()),
                         window.len_frames, track.dim());
}

LandmarkWindowView slice_track(const LandmarkTrack& track, const CandidateWindow& window) {
  check_window(track.frame_count(), window);
  const std::size_t stride = track.point_count() * 2;
  return LandmarkWindowView(track.data().subspan(window.start_frame * stride, window.len_frames * stride),
                            window.len_frames, track.point_count());
}

AudioWindowView whole_track(const AudioFeatureTrack& track) {
  return AudioWindowView(track.data(), track.frame_count(), track.dim());
}

LandmarkWindowView whole_track(const LandmarkTrack& track) {
  return LandmarkWindowView(track.data(), track.frame_count(), track.point_count());
}

}  // namespace isexplore
