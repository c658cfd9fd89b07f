#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "isexplore/windowing.hpp"

namespace isexplore {

// Mouth landmarks 48..67 of the 68-point scheme (0-based, inclusive).
inline constexpr std::size_t kMouthFirst = 48;
inline constexpr std::size_t kMouthCount = 20;
inline constexpr std::size_t kMinLandmarkPoints = kMouthFirst + kMouthCount;

struct SpectralConfig {
  // Bins with frequency >= hf_threshold * Nyquist count as high frequency.
  double hf_threshold = 0.25;

  bool operator==(const SpectralConfig&) const = default;
};

struct MotionSignals {
  std::vector<std::vector<double>> lip_channels;  // kMouthCount x T
  std::vector<double> pose_channel;                // T - 1
  double fps = 0.0;
};

struct MotionComplexity {
  double mc_lip = 0.0;
  double mc_pose = 0.0;
  double mc = 0.0;
};

Point2 mouth_center(const LandmarkWindowView& landmarks, std::size_t frame);

// Per-frame distance of each mouth landmark to the mouth centroid.
std::vector<std::vector<double>> lip_distance_series(const LandmarkWindowView& landmarks);

// Inter-frame displacement of the mouth centroid.
std::vector<double> pose_center_series(const LandmarkWindowView& landmarks);

MotionSignals motion_signals(const LandmarkWindowView& landmarks, double fps);

// Share of one-sided DFT magnitude (DC excluded) at or above the threshold.
// Constant signals give 0. `fps` only labels the axis: the threshold is a
// fraction of Nyquist, so the ratio depends on bin index alone.
double hf_ratio(std::span<const double> signal, double fps, const SpectralConfig& cfg);

MotionComplexity motion_complexity(const MotionSignals& signals, const SpectralConfig& cfg, double w_lip,
                                   double w_pose);

}  // namespace isexplore
