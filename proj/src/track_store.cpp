#include "isexplore/track_store.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "isexplore/errors.hpp"

namespace isexplore {

namespace {

constexpr std::size_t kMaxChunkBytes = std::size_t{1} << 26;

void check_header(const TrackHeader& h, ErrorCode code) {
  if (!std::isfinite(h.fps) || h.fps <= 0.0) {
    throw Error(code, "fps must be positive and finite");
  }
  if (h.frame_count < 1) throw Error(code, "frame_count must be >= 1");
  if (h.dim < 1) throw Error(code, "dim must be >= 1");
}

void check_payload(const TrackHeader& h, std::span<const float> data, ErrorCode non_finite) {
  if (data.size() != h.frame_count * h.values_per_frame()) {
    throw Error(ErrorCode::ValidationError,
                "payload has " + std::to_string(data.size()) + " values, header implies " +
                    std::to_string(h.frame_count * h.values_per_frame()));
  }
  const auto bad = std::find_if(data.begin(), data.end(), [](float v) { return !std::isfinite(v); });
  if (bad != data.end()) {
    throw Error(non_finite, "non-finite value at offset " + std::to_string(bad - data.begin()));
  }
}

TrackHeader make_header(TrackKind kind, double fps, std::size_t frames, std::size_t dim) {
  TrackHeader h;
  h.kind = kind;
  h.fps = fps;
  h.frame_count = frames;
  h.dim = dim;
  return h;
}

bool same_bits(std::span<const float> a, std::span<const float> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

template <typename UInt>
void put_le(std::vector<std::uint8_t>& out, UInt value) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename UInt>
UInt get_le(const std::uint8_t* p) {
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(p[i]) << (8 * i);
  return v;
}

std::vector<std::uint8_t> encode_header(const TrackHeader& h) {
  std::vector<std::uint8_t> out;
  out.reserve(kTrackHeaderSize);
  out.insert(out.end(), h.magic.begin(), h.magic.end());
  put_le<std::uint16_t>(out, h.version);
  out.push_back(static_cast<std::uint8_t>(h.kind));
  out.push_back(0);
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(h.fps));
  put_le<std::uint64_t>(out, h.frame_count);
  put_le<std::uint64_t>(out, h.dim);
  return out;
}

// Parses and validates the fixed header; leaves payload checks to the caller.
TrackHeader decode_header(std::span<const std::uint8_t> bytes) {
  const std::size_t prefix = std::min(bytes.size(), kTrackMagic.size());
  if (!std::equal(kTrackMagic.begin(), kTrackMagic.begin() + static_cast<std::ptrdiff_t>(prefix), bytes.begin(),
                  [](char m, std::uint8_t b) { return static_cast<std::uint8_t>(m) == b; })) {
    throw Error(ErrorCode::BadMagic, "not an FTRK file");
  }
  if (bytes.size() < kTrackHeaderSize) {
    throw Error(ErrorCode::TruncatedPayload, "header is " + std::to_string(bytes.size()) + " bytes, expected " +
                                                 std::to_string(kTrackHeaderSize));
  }
  const std::uint8_t* p = bytes.data();
  TrackHeader h;
  h.version = get_le<std::uint16_t>(p + 4);
  if (h.version != kTrackVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "version " + std::to_string(h.version));
  }
  const std::uint8_t kind = p[6];
  if (kind > static_cast<std::uint8_t>(TrackKind::Landmarks2D)) {
    throw Error(ErrorCode::UnknownKind, "kind " + std::to_string(kind));
  }
  h.kind = static_cast<TrackKind>(kind);
  if (p[7] != 0) throw Error(ErrorCode::ValidationError, "nonzero pad byte");
  h.fps = std::bit_cast<double>(get_le<std::uint64_t>(p + 8));
  h.frame_count = get_le<std::uint64_t>(p + 16);
  h.dim = get_le<std::uint64_t>(p + 24);
  check_header(h, ErrorCode::ValidationError);
  const std::uint64_t width = h.kind == TrackKind::Landmarks2D ? 2 : 1;
  if (h.dim > std::numeric_limits<std::uint64_t>::max() / width / 4 / h.frame_count) {
    throw Error(ErrorCode::ValidationError, "payload size overflows");
  }
  return h;
}

void append_payload(std::vector<std::uint8_t>& out, std::span<const float> data) {
  out.reserve(out.size() + data.size() * 4);
  for (float v : data) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
}

std::vector<float> decode_payload(const TrackHeader& h, std::span<const std::uint8_t> payload) {
  std::vector<float> data(payload.size() / 4);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = std::bit_cast<float>(get_le<std::uint32_t>(payload.data() + 4 * i));
  }
  check_payload(h, data, ErrorCode::NonFiniteData);
  return data;
}

Track build_track(const TrackHeader& h, std::vector<float> data) {
  if (h.kind == TrackKind::AudioFeatures) {
    return AudioFeatureTrack(h.fps, h.frame_count, h.dim, std::move(data));
  }
  return LandmarkTrack(h.fps, h.frame_count, h.dim, std::move(data));
}

const TrackHeader& header_of(const Track& t) {
  return std::visit([](const auto& x) -> const TrackHeader& { return x.header(); }, t);
}

std::span<const float> data_of(const Track& t) {
  return std::visit([](const auto& x) { return x.data(); }, t);
}

}  // namespace

std::size_t TrackHeader::values_per_frame() const {
  return static_cast<std::size_t>(dim) * (kind == TrackKind::Landmarks2D ? 2 : 1);
}

std::size_t TrackHeader::payload_bytes() const {
  return static_cast<std::size_t>(frame_count) * values_per_frame() * sizeof(float);
}

AudioFeatureTrack::AudioFeatureTrack(double fps, std::size_t frame_count, std::size_t dim, std::vector<float> data)
    : header_(make_header(TrackKind::AudioFeatures, fps, frame_count, dim)), data_(std::move(data)) {
  check_header(header_, ErrorCode::ValidationError);
  check_payload(header_, data_, ErrorCode::ValidationError);
}

std::span<const float> AudioFeatureTrack::row(std::size_t frame) const {
  return std::span<const float>(data_).subspan(frame * dim(), dim());
}

bool operator==(const AudioFeatureTrack& a, const AudioFeatureTrack& b) {
  return a.header_ == b.header_ && same_bits(a.data_, b.data_) &&
         std::bit_cast<std::uint64_t>(a.header_.fps) == std::bit_cast<std::uint64_t>(b.header_.fps);
}

LandmarkTrack::LandmarkTrack(double fps, std::size_t frame_count, std::size_t point_count, std::vector<float> data)
    : header_(make_header(TrackKind::Landmarks2D, fps, frame_count, point_count)), data_(std::move(data)) {
  check_header(header_, ErrorCode::ValidationError);
  check_payload(header_, data_, ErrorCode::ValidationError);
}

Point2 LandmarkTrack::point(std::size_t frame, std::size_t index) const {
  const std::size_t off = (frame * point_count() + index) * 2;
  return {data_[off], data_[off + 1]};
}

bool operator==(const LandmarkTrack& a, const LandmarkTrack& b) {
  return a.header_ == b.header_ && same_bits(a.data_, b.data_) &&
         std::bit_cast<std::uint64_t>(a.header_.fps) == std::bit_cast<std::uint64_t>(b.header_.fps);
}

std::vector<std::uint8_t> encode_track(const Track& track) {
  const TrackHeader& h = header_of(track);
  check_payload(h, data_of(track), ErrorCode::ValidationError);
  std::vector<std::uint8_t> out = encode_header(h);
  append_payload(out, data_of(track));
  return out;
}

Track decode_track(std::span<const std::uint8_t> bytes) {
  const TrackHeader h = decode_header(bytes);
  const std::size_t expected = h.payload_bytes();
  const std::size_t have = bytes.size() - kTrackHeaderSize;
  if (have < expected) {
    throw Error(ErrorCode::TruncatedPayload,
                "payload is " + std::to_string(have) + " bytes, expected " + std::to_string(expected));
  }
  if (have > expected) {
    throw Error(ErrorCode::TrailingData, std::to_string(have - expected) + " bytes after payload");
  }
  return build_track(h, decode_payload(h, bytes.subspan(kTrackHeaderSize)));
}

std::size_t write_track(const Track& track, std::ostream& sink) {
  const std::vector<std::uint8_t> bytes = encode_track(track);
  sink.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!sink) throw Error(ErrorCode::IoError, "write failed");
  return bytes.size();
}

Track read_track(std::istream& source) {
  std::vector<std::uint8_t> header(kTrackHeaderSize);
  source.read(reinterpret_cast<char*>(header.data()), static_cast<std::streamsize>(header.size()));
  header.resize(static_cast<std::size_t>(source.gcount()));
  if (source.bad()) throw Error(ErrorCode::IoError, "read failed");
  const TrackHeader h = decode_header(header);

  // Grow in bounded chunks so a corrupt frame_count cannot force a huge allocation.
  const std::size_t expected = h.payload_bytes();
  std::vector<std::uint8_t> payload;
  while (payload.size() < expected) {
    const std::size_t want = std::min(expected - payload.size(), kMaxChunkBytes);
    const std::size_t old = payload.size();
    payload.resize(old + want);
    source.read(reinterpret_cast<char*>(payload.data() + old), static_cast<std::streamsize>(want));
    const auto got = static_cast<std::size_t>(source.gcount());
    if (source.bad()) throw Error(ErrorCode::IoError, "read failed");
    if (got < want) {
      throw Error(ErrorCode::TruncatedPayload, "payload is " + std::to_string(old + got) +
                                                   " bytes, expected " + std::to_string(expected));
    }
  }
  if (source.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::TrailingData, "bytes after payload");
  }
  return build_track(h, decode_payload(h, payload));
}

void save_track(const Track& track, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_track(track, out);
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

Track load_track(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_track(in);
}

AudioFeatureTrack load_audio_track(const std::filesystem::path& path) {
  Track t = load_track(path);
  if (auto* audio = std::get_if<AudioFeatureTrack>(&t)) return std::move(*audio);
  throw Error(ErrorCode::ValidationError, path.string() + " holds landmarks, expected audio features");
}

LandmarkTrack load_landmark_track(const std::filesystem::path& path) {
  Track t = load_track(path);
  if (auto* lm = std::get_if<LandmarkTrack>(&t)) return std::move(*lm);
  throw Error(ErrorCode::ValidationError, path.string() + " holds audio features, expected landmarks");
}

std::filesystem::path sidecar_path(const std::filesystem::path& track_path) {
  std::filesystem::path p = track_path;
  p.replace_extension(".meta.json");
  return p;
}

void write_sidecar(const std::filesystem::path& track_path, const TrackMetadata& meta) {
  nlohmann::ordered_json j;
  j["source"] = meta.source;
  j["extractor"] = meta.extractor;
  j["created_utc"] = meta.created_utc ? nlohmann::ordered_json(*meta.created_utc) : nlohmann::ordered_json(nullptr);
  const auto path = sidecar_path(track_path);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

std::optional<TrackMetadata> read_sidecar(const std::filesystem::path& track_path) {
  std::ifstream in(sidecar_path(track_path));
  if (!in) return std::nullopt;
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  TrackMetadata meta;
  if (auto it = j.find("source"); it != j.end() && it->is_string()) meta.source = it->get<std::string>();
  if (auto it = j.find("extractor"); it != j.end() && it->is_string()) meta.extractor = it->get<std::string>();
  if (auto it = j.find("created_utc"); it != j.end() && it->is_string()) meta.created_utc = it->get<std::string>();
  return meta;
}

}  // namespace isexplore
