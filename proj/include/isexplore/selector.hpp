#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isexplore/audio_diversity.hpp"
#include "isexplore/motion_spectral.hpp"
#include "isexplore/track_store.hpp"
#include "isexplore/windowing.hpp"

namespace isexplore {

enum class StrategyKind { ISExplore, Random, AudioOnly, LipOnly, CameraOnly, LipAndCamera };

// CLI spelling: isexplore, random, audio, lip, camera, lip-camera.
std::string to_string(StrategyKind kind);
StrategyKind parse_strategy(const std::string& name);

struct SelectionConfig {
  double segment_len_s = 5.0;
  double stride_s = 1.0;
  std::size_t top_m = 5;
  DiversityMetric diversity_metric{};
  SpectralConfig spectral{};
  double w_lip = 0.5;
  double w_pose = 0.5;
  double epsilon = 1e-8;
  StrategyKind strategy = StrategyKind::ISExplore;
  std::uint64_t seed = 0;

  // Throws Error{BadConfig}.
  void validate() const;
};

struct CandidateScore {
  CandidateWindow window;
  double D = 0.0;
  // Absent for candidates pruned before the motion stage.
  std::optional<double> mc_lip;
  std::optional<double> mc_pose;
  std::optional<double> mc;
  std::optional<double> I;
  std::size_t rank = 0;
};

struct StageTimings {
  double candidates_ms = 0.0;
  double diversity_ms = 0.0;
  double spectral_ms = 0.0;
  double total_ms = 0.0;
};

struct SelectionReport {
  SelectionConfig config;
  std::vector<CandidateScore> candidates;  // pool order
  CandidateWindow chosen;
  StageTimings timings;
};

struct ExecutionOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

inline double informativeness_score(double diversity, double mc, double epsilon) {
  return diversity / (mc + epsilon);
}

// Sort by D, keep top_m, score motion on the survivors, pick max I.
// Ties are broken by earliest start frame.
SelectionReport run_isexplore(const AudioFeatureTrack& audio, const LandmarkTrack& landmarks,
                              const SelectionConfig& cfg, const ExecutionOptions& exec = {});

// Dispatches on cfg.strategy; ablation strategies score every candidate.
SelectionReport run_strategy(const AudioFeatureTrack& audio, const LandmarkTrack& landmarks,
                             const SelectionConfig& cfg, const ExecutionOptions& exec = {});

// Uniform index in [0, n) from a seeded mt19937_64 (rejection sampling).
std::size_t seeded_uniform_index(std::uint64_t seed, std::size_t n);

const CandidateScore& chosen_score(const SelectionReport& report);

}  // namespace isexplore
