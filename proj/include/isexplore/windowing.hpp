#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isexplore/track_store.hpp"

namespace isexplore {

struct CandidateWindow {
  std::size_t index = 0;
  std::size_t start_frame = 0;
  std::size_t len_frames = 0;
  double start_s = 0.0;
  double end_s = 0.0;

  std::size_t end_frame() const { return start_frame + len_frames; }
  bool operator==(const CandidateWindow&) const = default;
};

// Seconds to frames, round-to-nearest.
std::size_t seconds_to_frames(double seconds, double fps);

// Fixed-length windows at a fixed stride, starting at frame 0. The trailing
// partial window is dropped.
std::vector<CandidateWindow> build_candidates(std::size_t total_frames, double fps, double segment_len_s,
                                              double stride_s);

// Frame-indexed window over an audio track. Borrowed; the track must outlive it.
class AudioWindowView {
 public:
  AudioWindowView(std::span<const float> data, std::size_t frames, std::size_t dim)
      : data_(data), frames_(frames), dim_(dim) {}

  std::size_t frames() const { return frames_; }
  std::size_t dim() const { return dim_; }
  std::span<const float> row(std::size_t t) const { return data_.subspan(t * dim_, dim_); }
  std::span<const float> data() const { return data_; }

 private:
  std::span<const float> data_;
  std::size_t frames_;
  std::size_t dim_;
};

class LandmarkWindowView {
 public:
  LandmarkWindowView(std::span<const float> data, std::size_t frames, std::size_t points)
      : data_(data), frames_(frames), points_(points) {}

  std::size_t frames() const { return frames_; }
  std::size_t points() const { return points_; }
  Point2 point(std::size_t t, std::size_t p) const {
    const std::size_t off = (t * points_ + p) * 2;
    return {data_[off], data_[off + 1]};
  }

 private:
  std::span<const float> data_;
  std::size_t frames_;
  std::size_t points_;
};

AudioWindowView slice_track(const AudioFeatureTrack& track, const CandidateWindow& window);
LandmarkWindowView slice_track(const LandmarkTrack& track, const CandidateWindow& window);

AudioWindowView whole_track(const AudioFeatureTrack& track);
LandmarkWindowView whole_track(const LandmarkTrack& track);

}  // namespace isexplore
