#pragma once

// FTRK: fixed-layout binary container for per-frame feature tracks.
//
//   magic "FTRK" (4) | version u16 LE | kind u8 | pad u8 = 0 |
//   fps f64 LE | frame_count u64 LE | dim u64 LE | payload
//
// The payload is frame_count * dim * width little-endian float32 values,
// frame-major, where width is 1 for audio features and 2 (x, y) for
// landmarks.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace isexplore {

enum class TrackKind : std::uint8_t { AudioFeatures = 0, Landmarks2D = 1 };

inline constexpr std::array<char, 4> kTrackMagic{'F', 'T', 'R', 'K'};
inline constexpr std::uint16_t kTrackVersion = 1;
inline constexpr std::size_t kTrackHeaderSize = 32;

struct TrackHeader {
  std::array<char, 4> magic = kTrackMagic;
  std::uint16_t version = kTrackVersion;
  TrackKind kind = TrackKind::AudioFeatures;
  double fps = 0.0;
  std::uint64_t frame_count = 0;
  std::uint64_t dim = 0;

  // Floats per frame: dim for audio, 2 * dim for landmarks.
  std::size_t values_per_frame() const;
  std::size_t payload_bytes() const;

  bool operator==(const TrackHeader&) const = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// T x d matrix of per-frame audio feature vectors.
class AudioFeatureTrack {
 public:
  AudioFeatureTrack(double fps, std::size_t frame_count, std::size_t dim, std::vector<float> data);

  const TrackHeader& header() const { return header_; }
  double fps() const { return header_.fps; }
  std::size_t frame_count() const { return static_cast<std::size_t>(header_.frame_count); }
  std::size_t dim() const { return static_cast<std::size_t>(header_.dim); }
  std::span<const float> data() const { return data_; }
  std::span<const float> row(std::size_t frame) const;

  // Bit-exact comparison of header and payload.
  friend bool operator==(const AudioFeatureTrack& a, const AudioFeatureTrack& b);

 private:
  TrackHeader header_;
  std::vector<float> data_;
};

// T x P x 2 matrix of 2D landmark coordinates.
class LandmarkTrack {
 public:
  LandmarkTrack(double fps, std::size_t frame_count, std::size_t point_count, std::vector<float> data);

  const TrackHeader& header() const { return header_; }
  double fps() const { return header_.fps; }
  std::size_t frame_count() const { return static_cast<std::size_t>(header_.frame_count); }
  std::size_t point_count() const { return static_cast<std::size_t>(header_.dim); }
  std::span<const float> data() const { return data_; }
  Point2 point(std::size_t frame, std::size_t index) const;

  friend bool operator==(const LandmarkTrack& a, const LandmarkTrack& b);

 private:
  TrackHeader header_;
  std::vector<float> data_;
};

using Track = std::variant<AudioFeatureTrack, LandmarkTrack>;

// Returns the number of bytes written. Throws Error{IoError} when the sink fails.
std::size_t write_track(const Track& track, std::ostream& sink);
Track read_track(std::istream& source);

std::vector<std::uint8_t> encode_track(const Track& track);
Track decode_track(std::span<const std::uint8_t> bytes);

void save_track(const Track& track, const std::filesystem::path& path);
Track load_track(const std::filesystem::path& path);
AudioFeatureTrack load_audio_track(const std::filesystem::path& path);
LandmarkTrack load_landmark_track(const std::filesystem::path& path);

// Informational sidecar next to a track file ("<stem>.meta.json").
struct TrackMetadata {
  std::string source;
  std::string extractor;
  std::optional<std::string> created_utc;
};

std::filesystem::path sidecar_path(const std::filesystem::path& track_path);
void write_sidecar(const std::filesystem::path& track_path, const TrackMetadata& meta);
std::optional<TrackMetadata> read_sidecar(const std::filesystem::path& track_path);

}  // namespace isexplore
