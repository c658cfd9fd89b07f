#include "isexplore/selector.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "isexplore/errors.hpp"
#include "isexplore/parallel.hpp"

namespace isexplore {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void check_tracks(const AudioFeatureTrack& audio, const LandmarkTrack& landmarks) {
  if (audio.fps() != landmarks.fps()) {
    throw Error(ErrorCode::TrackMismatch, "fps differ: audio " + std::to_string(audio.fps()) + ", landmarks " +
                                              std::to_string(landmarks.fps()));
  }
  if (audio.frame_count() != landmarks.frame_count()) {
    throw Error(ErrorCode::TrackMismatch, "frame counts differ: audio " + std::to_string(audio.frame_count()) +
                                              ", landmarks " + std::to_string(landmarks.frame_count()));
  }
  if (landmarks.point_count() < kMinLandmarkPoints) {
    throw Error(ErrorCode::TooFewLandmarks, "landmark track has " + std::to_string(landmarks.point_count()) +
                                                " points, need " + std::to_string(kMinLandmarkPoints));
  }
}

struct Pool {
  std::vector<CandidateWindow> windows;
  std::vector<CandidateScore> scores;
};

Pool score_diversity(const AudioFeatureTrack& audio, const SelectionConfig& cfg, const ExecutionOptions& exec,
                     StageTimings& timings) {
  auto t0 = Clock::now();
  Pool pool;
  pool.windows = build_candidates(audio.frame_count(), audio.fps(), cfg.segment_len_s, cfg.stride_s);
  pool.scores.resize(pool.windows.size());
  timings.candidates_ms = elapsed_ms(t0);

  t0 = Clock::now();
  parallel_for(pool.windows.size(), exec.threads, [&](std::size_t i) {
    pool.scores[i].window = pool.windows[i];
    pool.scores[i].D = audio_diversity(slice_track(audio, pool.windows[i]), cfg.diversity_metric);
  });
  timings.diversity_ms = elapsed_ms(t0);
  return pool;
}

void score_motion(const LandmarkTrack& landmarks, const SelectionConfig& cfg, const ExecutionOptions& exec,
                  std::span<const std::size_t> which, std::vector<CandidateScore>& scores, StageTimings& timings) {
  const auto t0 = Clock::now();
  parallel_for(which.size(), exec.threads, [&](std::size_t j) {
    CandidateScore& s = scores[which[j]];
    const MotionSignals signals = motion_signals(slice_track(landmarks, s.window), landmarks.fps());
    const MotionComplexity mc = motion_complexity(signals, cfg.spectral, cfg.w_lip, cfg.w_pose);
    s.mc_lip = mc.mc_lip;
    s.mc_pose = mc.mc_pose;
    s.mc = mc.mc;
    s.I = informativeness_score(s.D, mc.mc, cfg.epsilon);
  });
  timings.spectral_ms = elapsed_ms(t0);
}

// Sorts indices by key (descending if `descending`), earliest index first on ties.
template <typename Key>
std::vector<std::size_t> ranked(std::vector<std::size_t> idx, Key key, bool descending) {
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? key(a) > key(b) : key(a) < key(b);
  });
  return idx;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

void assign_ranks(std::vector<CandidateScore>& scores, std::span<const std::size_t> order) {
  for (std::size_t r = 0; r < order.size(); ++r) scores[order[r]].rank = r + 1;
}

}  // namespace

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::ISExplore: return "isexplore";
    case StrategyKind::Random: return "random";
    case StrategyKind::AudioOnly: return "audio";
    case StrategyKind::LipOnly: return "lip";
    case StrategyKind::CameraOnly: return "camera";
    case StrategyKind::LipAndCamera: return "lip-camera";
  }
  return "unknown";
}

StrategyKind parse_strategy(const std::string& name) {
  for (auto kind : {StrategyKind::ISExplore, StrategyKind::Random, StrategyKind::AudioOnly, StrategyKind::LipOnly,
                    StrategyKind::CameraOnly, StrategyKind::LipAndCamera}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::BadConfig, "unknown strategy '" + name + "'");
}

void SelectionConfig::validate() const {
  if (!(segment_len_s > 0.0) || !std::isfinite(segment_len_s)) {
    throw Error(ErrorCode::BadConfig, "segment_len_s must be positive");
  }
  if (!(stride_s > 0.0) || !std::isfinite(stride_s)) throw Error(ErrorCode::BadConfig, "stride_s must be positive");
  if (top_m < 1) throw Error(ErrorCode::BadConfig, "top_m must be >= 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadConfig, "epsilon must be positive");
  if (!(spectral.hf_threshold > 0.0 && spectral.hf_threshold < 1.0)) {
    throw Error(ErrorCode::BadConfig, "hf_threshold must lie in (0, 1)");
  }
  if (!(w_lip >= 0.0) || !(w_pose >= 0.0) || !(w_lip + w_pose > 0.0)) {
    throw Error(ErrorCode::BadConfig, "weights must be non-negative with a positive sum");
  }
  if (diversity_metric.kind != DiversityMetricKind::MeanPairwiseEuclidean && diversity_metric.k < 1) {
    throw Error(ErrorCode::BadConfig, "metric k must be >= 1");
  }
}

std::size_t seeded_uniform_index(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadConfig, "empty candidate pool");
  std::mt19937_64 rng(seed);
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<std::size_t>(draw % range);
}

const CandidateScore& chosen_score(const SelectionReport& report) {
  return report.candidates.at(report.chosen.index);
}

SelectionReport run_isexplore(const AudioFeatureTrack& audio, const LandmarkTrack& landmarks,
                              const SelectionConfig& cfg, const ExecutionOptions& exec) {
  const auto start = Clock::now();
  cfg.validate();
  check_tracks(audio, landmarks);

  SelectionReport report;
  report.config = cfg;
  report.config.strategy = StrategyKind::ISExplore;
  Pool pool = score_diversity(audio, cfg, exec, report.timings);
  auto& scores = pool.scores;

  const std::vector<std::size_t> by_d = ranked(iota_indices(scores.size()), [&](std::size_t i) { return scores[i].D; },
                                               /*descending=*/true);
  const std::size_t kept = std::min(cfg.top_m, by_d.size());
  const std::span<const std::size_t> top(by_d.data(), kept);
  score_motion(landmarks, cfg, exec, top, scores, report.timings);

  // Pool indices follow start_frame, so ordering the survivors by index
  // before the stable sort makes ties resolve to the earliest window.
  std::vector<std::size_t> survivors(top.begin(), top.end());
  std::sort(survivors.begin(), survivors.end());
  std::vector<std::size_t> order = ranked(survivors, [&](std::size_t i) { return *scores[i].I; }, true);
  order.insert(order.end(), by_d.begin() + static_cast<std::ptrdiff_t>(kept), by_d.end());
  assign_ranks(scores, order);

  report.chosen = scores[order.front()].window;
  report.candidates = std::move(scores);
  report.timings.total_ms = elapsed_ms(start);
  return report;
}

SelectionReport run_strategy(const AudioFeatureTrack& audio, const LandmarkTrack& landmarks,
                             const SelectionConfig& cfg, const ExecutionOptions& exec) {
  if (cfg.strategy == StrategyKind::ISExplore) return run_isexplore(audio, landmarks, cfg, exec);

  const auto start = Clock::now();
  cfg.validate();
  check_tracks(audio, landmarks);

  SelectionReport report;
  report.config = cfg;
  Pool pool = score_diversity(audio, cfg, exec, report.timings);
  auto& scores = pool.scores;
  const std::vector<std::size_t> all = iota_indices(scores.size());
  score_motion(landmarks, cfg, exec, all, scores, report.timings);

  std::vector<std::size_t> order;
  switch (cfg.strategy) {
    case StrategyKind::Random: {
      const std::size_t pick = seeded_uniform_index(cfg.seed, scores.size());
      order.push_back(pick);
      for (std::size_t i : all) {
        if (i != pick) order.push_back(i);
      }
      break;
    }
    case StrategyKind::AudioOnly:
      order = ranked(all, [&](std::size_t i) { return scores[i].D; }, true);
      break;
    case StrategyKind::LipOnly:
      order = ranked(all, [&](std::size_t i) { return *scores[i].mc_lip; }, false);
      break;
    case StrategyKind::CameraOnly:
      order = ranked(all, [&](std::size_t i) { return *scores[i].mc_pose; }, false);
      break;
    case StrategyKind::LipAndCamera:
      order = ranked(all, [&](std::size_t i) { return *scores[i].mc; }, false);
      break;
    case StrategyKind::ISExplore:
      break;
  }
  assign_ranks(scores, order);

  report.chosen = scores[order.front()].window;
  report.candidates = std::move(scores);
  report.timings.total_ms = elapsed_ms(start);
  return report;
}

}  // namespace isexplore
