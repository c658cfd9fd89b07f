#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "isexplore/errors.hpp"
#include "isexplore/motion_spectral.hpp"
#include "oracles.hpp"

using namespace isexplore;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> tone_mix(std::size_t n, double fps, std::initializer_list<std::pair<double, double>> parts) {
  std::vector<double> x(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    for (const auto& [hz, amp] : parts) x[t] += amp * std::sin(2.0 * kPi * hz * static_cast<double>(t) / fps);
  }
  return x;
}

// 68-point frames whose mouth is a 20-point polygon given by `mouth(t, k)`.
template <typename MouthFn>
LandmarkTrack make_landmarks(std::size_t frames, MouthFn mouth) {
  std::vector<float> data(frames * 68 * 2, 0.0f);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t p = 0; p < 68; ++p) {
      Point2 q{static_cast<double>(p), 0.0};
      if (p >= 48) q = mouth(t, p - 48);
      data[(t * 68 + p) * 2] = static_cast<float>(q.x);
      data[(t * 68 + p) * 2 + 1] = static_cast<float>(q.y);
    }
  }
  return LandmarkTrack(25.0, frames, 68, std::move(data));
}

// Integer-valued mouth outline so translations by integers stay exact.
Point2 grid_mouth(std::size_t k) {
  static const int xs[20] = {-6, -5, -3, -1, 1, 3, 5, 6, 5, 3, 1, -1, -3, -5, -4, -2, 0, 2, 4, 0};
  static const int ys[20] = {0, 2, 3, 3, 3, 3, 2, 0, -2, -3, -3, -3, -3, -2, 1, 0, 0, 0, 1, -2};
  return {100.0 + xs[k], 200.0 + ys[k]};
}

}  // namespace

TEST_CASE("hf_ratio examples", "[motion_spectral]") {
  const SpectralConfig cfg{0.25};
  CHECK(hf_ratio(std::vector<double>(64, 3.5), 25.0, cfg) == 0.0);
  CHECK(hf_ratio(tone_mix(100, 25.0, {{10.0, 1.0}}), 25.0, cfg) == Approx(1.0).margin(1e-9));
  CHECK(hf_ratio(tone_mix(100, 25.0, {{1.0, 1.0}, {10.0, 1.0}}), 25.0, cfg) == Approx(0.5).margin(1e-9));
  CHECK(oracle::naive_hf_ratio(tone_mix(100, 25.0, {{1.0, 1.0}, {10.0, 1.0}}), 0.25) == Approx(0.5).margin(1e-9));

  try {
    hf_ratio(std::vector<double>{1, 2, 3}, 25.0, cfg);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SignalTooShort);
  }
  CHECK_THROWS_AS(hf_ratio(std::vector<double>(8, 1.0), 25.0, SpectralConfig{1.0}), Error);
  CHECK_THROWS_AS(hf_ratio(std::vector<double>(8, 1.0), 25.0, SpectralConfig{0.0}), Error);
}

TEST_CASE("hf_ratio matches the naive DFT and its invariances", "[motion_spectral][property]") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng() % 300;
    std::vector<double> x(n);
    for (auto& v : x) v = normal(rng);
    const double thr = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
    const double r = hf_ratio(x, 25.0, {thr});
    CHECK(r == Approx(oracle::naive_hf_ratio(x, thr)).epsilon(1e-9).margin(1e-12));
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);

    auto scaled = x;
    for (auto& v : scaled) v *= 37.5;
    CHECK(hf_ratio(scaled, 25.0, {thr}) == Approx(r).margin(1e-12));
    auto shifted = x;
    for (auto& v : shifted) v += 4.25;
    CHECK(hf_ratio(shifted, 25.0, {thr}) == Approx(r).margin(1e-12));

    // fps labels the axis only.
    CHECK(hf_ratio(x, 30.0, {thr}) == r);

    double prev = 1.0;
    for (double t = 0.05; t < 1.0; t += 0.05) {
      const double v = hf_ratio(x, 25.0, {t});
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("lip distance series of static and translated faces", "[motion_spectral]") {
  const auto still = make_landmarks(30, [](std::size_t, std::size_t k) { return grid_mouth(k); });
  const auto channels = lip_distance_series(whole_track(still));
  REQUIRE(channels.size() == 20);
  for (const auto& ch : channels) {
    REQUIRE(ch.size() == 30);
    for (double v : ch) CHECK(v == ch[0]);
  }

  const auto moved = make_landmarks(30, [](std::size_t t, std::size_t k) {
    Point2 q = grid_mouth(k);
    return Point2{q.x + 10.0 * static_cast<double>(t % 7), q.y + 10.0 * static_cast<double>(t % 7)};
  });
  CHECK(lip_distance_series(whole_track(moved)) == channels);
}

TEST_CASE("radial oscillation of one mouth point", "[motion_spectral]") {
  // Landmark 51 (k = 3) moves radially by a*sin; the centroid moves by a*sin/20
  // along the same direction, so the channel swings by (19/20)*a.
  const double a = 2.0;
  const std::size_t k51 = 51 - 48;
  const Point2 base = grid_mouth(k51);
  Point2 c0{0, 0};
  for (std::size_t k = 0; k < 20; ++k) {
    c0.x += grid_mouth(k).x / 20.0;
    c0.y += grid_mouth(k).y / 20.0;
  }
  const double r0 = std::hypot(base.x - c0.x, base.y - c0.y);
  const Point2 dir{(base.x - c0.x) / r0, (base.y - c0.y) / r0};
  const auto lm = make_landmarks(50, [&](std::size_t t, std::size_t k) {
    Point2 q = grid_mouth(k);
    if (k == k51) {
      const double s = a * std::sin(2.0 * kPi * static_cast<double>(t) / 25.0);
      q.x += s * dir.x;
      q.y += s * dir.y;
    }
    return q;
  });
  const auto ch = lip_distance_series(whole_track(lm))[k51];
  double lo = ch[0], hi = ch[0];
  for (std::size_t t = 0; t < ch.size(); ++t) {
    const double expected = r0 + 0.95 * a * std::sin(2.0 * kPi * static_cast<double>(t) / 25.0);
    CHECK(ch[t] == Approx(expected).margin(1e-4));
    lo = std::min(lo, ch[t]);
    hi = std::max(hi, ch[t]);
  }
  // At 25 fps the nearest samples to the 1 Hz peak are 0.01 s away.
  const double sampled_peak = std::sin(2.0 * kPi * 6.0 / 25.0);
  CHECK((hi - lo) / 2.0 == Approx(0.95 * a * sampled_peak).margin(1e-4));
}

TEST_CASE("lip distances scale with the face", "[motion_spectral][property]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point2> jitter(10 * 20);
  for (auto& p : jitter) p = {u(rng), u(rng)};
  auto build = [&](double scale) {
    return make_landmarks(10, [&](std::size_t t, std::size_t k) {
      const Point2 q = grid_mouth(k);
      return Point2{scale * (q.x + jitter[t * 20 + k].x), scale * (q.y + jitter[t * 20 + k].y)};
    });
  };
  const auto base = lip_distance_series(whole_track(build(1.0)));
  const auto doubled = lip_distance_series(whole_track(build(2.0)));
  for (std::size_t k = 0; k < 20; ++k) {
    for (std::size_t t = 0; t < 10; ++t) CHECK(doubled[k][t] == Approx(2.0 * base[k][t]).epsilon(1e-5));
  }
}

TEST_CASE("pose center series", "[motion_spectral]") {
  const auto still = make_landmarks(12, [](std::size_t, std::size_t k) { return grid_mouth(k); });
  const auto zeros = pose_center_series(whole_track(still));
  REQUIRE(zeros.size() == 11);
  for (double v : zeros) CHECK(v == 0.0);

  const auto drifting = make_landmarks(12, [](std::size_t t, std::size_t k) {
    const Point2 q = grid_mouth(k);
    return Point2{q.x + 0.75 * static_cast<double>(t), q.y + 1.0 * static_cast<double>(t)};
  });
  for (double v : pose_center_series(whole_track(drifting))) CHECK(v == Approx(1.25).epsilon(1e-12));

  // Small coordinates keep float storage error well below 1e-6.
  const double amp = 2.0;
  const double w = 2.0 * kPi * 1.3 / 25.0;
  auto center = [&](double t) { return Point2{amp * std::sin(w * t), 0.5 * amp * std::cos(w * t)}; };
  const auto swaying = make_landmarks(40, [&](std::size_t t, std::size_t k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / 20.0;
    const Point2 c = center(static_cast<double>(t));
    return Point2{c.x + 0.5 * std::cos(theta), c.y + 0.25 * std::sin(theta)};
  });
  const auto series = pose_center_series(whole_track(swaying));
  for (std::size_t t = 0; t + 1 < 40; ++t) {
    const Point2 a = center(static_cast<double>(t));
    const Point2 b = center(static_cast<double>(t + 1));
    CHECK(series[t] == Approx(std::hypot(b.x - a.x, b.y - a.y)).margin(1e-6));
  }

  LandmarkTrack few(25.0, 5, 40, std::vector<float>(5 * 40 * 2, 0.0f));
  try {
    pose_center_series(whole_track(few));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewLandmarks);
  }
  CHECK_THROWS_AS(lip_distance_series(whole_track(few)), Error);
}

TEST_CASE("motion complexity combines lip and pose ratios", "[motion_spectral]") {
  const SpectralConfig cfg{0.25};
  const auto still = make_landmarks(30, [](std::size_t, std::size_t k) { return grid_mouth(k); });
  const auto zero = motion_complexity(motion_signals(whole_track(still), 25.0), cfg, 0.5, 0.5);
  CHECK(zero.mc_lip == 0.0);
  CHECK(zero.mc_pose == 0.0);
  CHECK(zero.mc == 0.0);

  // Bin 4 vs bin 40 of N = 100: amplitudes 3:2 give 0.4, 4:1 gives 0.2.
  MotionSignals s;
  s.fps = 25.0;
  const auto lip = tone_mix(100, 25.0, {{1.0, 3.0}, {10.0, 2.0}});
  const auto pose = tone_mix(100, 25.0, {{1.0, 4.0}, {10.0, 1.0}});
  REQUIRE(oracle::naive_hf_ratio(lip, 0.25) == Approx(0.4).margin(1e-12));
  REQUIRE(oracle::naive_hf_ratio(pose, 0.25) == Approx(0.2).margin(1e-12));
  s.lip_channels.assign(20, lip);
  s.pose_channel = pose;
  const auto mc = motion_complexity(s, cfg, 0.5, 0.5);
  CHECK(mc.mc_lip == Approx(0.4).margin(1e-12));
  CHECK(mc.mc_pose == Approx(0.2).margin(1e-12));
  CHECK(mc.mc == Approx(0.3).margin(1e-12));

  const auto lip_only = motion_complexity(s, cfg, 0.7, 0.0);
  CHECK(lip_only.mc == lip_only.mc_lip);
  const auto pose_only = motion_complexity(s, cfg, 0.0, 2.0);
  CHECK(pose_only.mc == pose_only.mc_pose);

  CHECK_THROWS_AS(motion_complexity(s, cfg, 0.0, 0.0), Error);
  CHECK_THROWS_AS(motion_complexity(s, cfg, -1.0, 2.0), Error);
}
