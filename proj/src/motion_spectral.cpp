#include "isexplore/motion_spectral.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include <fftw3.h>

#include "isexplore/errors.hpp"

namespace isexplore {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

// The FFTW planner is not thread-safe; plans are built once per length under
// a lock and then executed concurrently through the new-array interface.
fftw_plan r2c_plan(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<fftw_plan_s, PlanDeleter>> plans;
  std::lock_guard lock(mutex);
  auto it = plans.find(n);
  if (it == plans.end()) {
    auto in = fftw_buffer<double>(static_cast<std::size_t>(n));
    auto out = fftw_buffer<fftw_complex>(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE);
    if (plan == nullptr) throw Error(ErrorCode::BadConfig, "FFTW could not plan length " + std::to_string(n));
    it = plans.emplace(n, plan).first;
  }
  return it->second.get();
}

void require_landmarks(const LandmarkWindowView& lm) {
  if (lm.points() < kMinLandmarkPoints) {
    throw Error(ErrorCode::TooFewLandmarks,
                "need " + std::to_string(kMinLandmarkPoints) + " points, got " + std::to_string(lm.points()));
  }
  if (lm.frames() < 2) throw Error(ErrorCode::TooFewFrames, "need at least 2 frames");
}

}  // namespace

Point2 mouth_center(const LandmarkWindowView& landmarks, std::size_t frame) {
  Point2 c;
  for (std::size_t p = kMouthFirst; p < kMouthFirst + kMouthCount; ++p) {
    const Point2 q = landmarks.point(frame, p);
    c.x += q.x;
    c.y += q.y;
  }
  c.x /= static_cast<double>(kMouthCount);
  c.y /= static_cast<double>(kMouthCount);
  return c;
}

std::vector<std::vector<double>> lip_distance_series(const LandmarkWindowView& landmarks) {
  require_landmarks(landmarks);
  const std::size_t frames = landmarks.frames();
  std::vector<std::vector<double>> channels(kMouthCount, std::vector<double>(frames));
  for (std::size_t t = 0; t < frames; ++t) {
    const Point2 c = mouth_center(landmarks, t);
    for (std::size_t k = 0; k < kMouthCount; ++k) {
      const Point2 q = landmarks.point(t, kMouthFirst + k);
      channels[k][t] = std::hypot(q.x - c.x, q.y - c.y);
    }
  }
  return channels;
}

std::vector<double> pose_center_series(const LandmarkWindowView& landmarks) {
  require_landmarks(landmarks);
  std::vector<double> series(landmarks.frames() - 1);
  Point2 prev = mouth_center(landmarks, 0);
  for (std::size_t t = 1; t < landmarks.frames(); ++t) {
    const Point2 cur = mouth_center(landmarks, t);
    series[t - 1] = std::hypot(cur.x - prev.x, cur.y - prev.y);
    prev = cur;
  }
  return series;
}

MotionSignals motion_signals(const LandmarkWindowView& landmarks, double fps) {
  return MotionSignals{lip_distance_series(landmarks), pose_center_series(landmarks), fps};
}

double hf_ratio(std::span<const double> signal, double fps, const SpectralConfig& cfg) {
  const std::size_t n = signal.size();
  if (n < 4) throw Error(ErrorCode::SignalTooShort, "need at least 4 samples, got " + std::to_string(n));
  if (!(cfg.hf_threshold > 0.0 && cfg.hf_threshold < 1.0)) {
    throw Error(ErrorCode::BadConfig, "hf_threshold must lie in (0, 1)");
  }
  if (!(fps > 0.0)) throw Error(ErrorCode::BadConfig, "fps must be positive");

  // Removing the mean only touches the excluded DC bin.
  const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(n);
  auto in = fftw_buffer<double>(n);
  bool constant = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(signal[i])) throw Error(ErrorCode::ValidationError, "non-finite sample");
    in[i] = signal[i] - mean;
    constant = constant && signal[i] == signal[0];
  }
  if (constant) return 0.0;

  const std::size_t bins = n / 2 + 1;
  auto out = fftw_buffer<fftw_complex>(bins);
  fftw_execute_dft_r2c(r2c_plan(static_cast<int>(n)), in.get(), out.get());

  double high = 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < bins; ++i) {
    const double mag = std::hypot(out[i][0], out[i][1]);
    total += mag;
    if (2.0 * static_cast<double>(i) / static_cast<double>(n) >= cfg.hf_threshold) high += mag;
  }
  if (total == 0.0) return 0.0;
  return high / total;
}

MotionComplexity motion_complexity(const MotionSignals& signals, const SpectralConfig& cfg, double w_lip,
                                   double w_pose) {
  if (!(w_lip >= 0.0) || !(w_pose >= 0.0) || !(w_lip + w_pose > 0.0)) {
    throw Error(ErrorCode::BadConfig, "weights must be non-negative with a positive sum");
  }
  if (signals.lip_channels.size() != kMouthCount) {
    throw Error(ErrorCode::ValidationError, "expected " + std::to_string(kMouthCount) + " lip channels");
  }
  MotionComplexity mc;
  double lip_sum = 0.0;
  for (const auto& channel : signals.lip_channels) lip_sum += hf_ratio(channel, signals.fps, cfg);
  mc.mc_lip = lip_sum / static_cast<double>(kMouthCount);
  mc.mc_pose = hf_ratio(signals.pose_channel, signals.fps, cfg);
  if (w_pose == 0.0) {
    mc.mc = mc.mc_lip;
  } else if (w_lip == 0.0) {
    mc.mc = mc.mc_pose;
  } else {
    mc.mc = (w_lip * mc.mc_lip + w_pose * mc.mc_pose) / (w_lip + w_pose);
  }
  return mc;
}

}  // namespace isexplore
