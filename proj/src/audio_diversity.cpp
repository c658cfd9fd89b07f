#include "isexplore/audio_diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "isexplore/errors.hpp"

namespace isexplore {

namespace {

void require_frames(const AudioWindowView& f) {
  if (f.frames() < 2) throw Error(ErrorCode::TooFewFrames, "need at least 2 frames, got " + std::to_string(f.frames()));
}

Eigen::MatrixXd centered(const AudioWindowView& f) {
  Eigen::MatrixXd x(f.frames(), f.dim());
  for (std::size_t t = 0; t < f.frames(); ++t) {
    const auto row = f.row(t);
    for (std::size_t j = 0; j < f.dim(); ++j) x(t, j) = row[j];
  }
  x.rowwise() -= x.colwise().mean();
  return x;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

}  // namespace

std::string to_string(DiversityMetricKind kind) {
  switch (kind) {
    case DiversityMetricKind::MeanPairwiseEuclidean: return "pairwise-euclidean";
    case DiversityMetricKind::PcaTop1ExplainedVariance: return "pca-top1";
    case DiversityMetricKind::PcaCumulativeVariance: return "pca-cumulative";
    case DiversityMetricKind::SemanticEntropy: return "semantic-entropy";
  }
  return "unknown";
}

DiversityMetricKind parse_diversity_kind(const std::string& name) {
  for (auto kind : {DiversityMetricKind::MeanPairwiseEuclidean, DiversityMetricKind::PcaTop1ExplainedVariance,
                    DiversityMetricKind::PcaCumulativeVariance, DiversityMetricKind::SemanticEntropy}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::BadConfig, "unknown diversity metric '" + name + "'");
}

double mean_pairwise_euclidean(const AudioWindowView& features) {
  require_frames(features);
  const std::size_t n = features.frames();
  const std::size_t d = features.dim();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const float* a = features.row(i).data();
    for (std::size_t j = i + 1; j < n; ++j) {
      const float* b = features.row(j).data();
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = static_cast<double>(a[c]) - static_cast<double>(b[c]);
        s += diff * diff;
      }
      total += std::sqrt(s);
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

std::vector<double> covariance_eigenvalues(const AudioWindowView& features) {
  require_frames(features);
  const Eigen::MatrixXd x = centered(features);
  const double scale = 1.0 / static_cast<double>(features.frames() - 1);
  Eigen::MatrixXd m;
  if (features.frames() <= features.dim()) {
    m = (x * x.transpose()) * scale;
  } else {
    m = (x.transpose() * x) * scale;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> eig(features.dim(), 0.0);
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) eig[static_cast<std::size_t>(i)] = std::max(0.0, ev(i));
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

VarianceRatio pca_cumulative_variance(const AudioWindowView& features, std::size_t k) {
  require_frames(features);
  if (k < 1 || k > features.dim()) {
    throw Error(ErrorCode::BadComponentCount,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(features.dim()) + "]");
  }
  const std::vector<double> eig = covariance_eigenvalues(features);
  double head = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    total += eig[i];
    if (i + 1 == k) head = total;
  }
  if (total <= 0.0) return {1.0, true};
  return {std::min(1.0, head / total), false};
}

VarianceRatio pca_top1_explained_variance(const AudioWindowView& features) {
  return pca_cumulative_variance(features, 1);
}

std::vector<std::size_t> deterministic_kmeans(const AudioWindowView& features, std::size_t k) {
  require_frames(features);
  const std::size_t n = features.frames();
  const std::size_t d = features.dim();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::BadClusterCount, "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }

  std::vector<double> points(n * d);
  for (std::size_t t = 0; t < n; ++t) {
    const auto row = features.row(t);
    std::copy(row.begin(), row.end(), points.begin() + static_cast<std::ptrdiff_t>(t * d));
  }
  auto point = [&](std::size_t t) { return std::span<const double>(points).subspan(t * d, d); };

  // Farthest-point seeding: row 0, then repeatedly the row farthest from all
  // chosen centers (lowest index on ties).
  std::vector<double> centers(k * d);
  auto center = [&](std::size_t c) { return std::span<double>(centers).subspan(c * d, d); };
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::ranges::copy(point(next), center(c).begin());
    std::size_t best = 0;
    double best_dist = -1.0;
    for (std::size_t t = 0; t < n; ++t) {
      nearest[t] = std::min(nearest[t], squared_distance(point(t), center(c)));
      if (nearest[t] > best_dist) {
        best_dist = nearest[t];
        best = t;
      }
    }
    next = best;
  }

  std::vector<std::size_t> labels(n, 0);
  std::vector<std::size_t> counts(k);
  for (int iter = 0; iter < kKMeansMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double dist = squared_distance(point(t), center(c));
        if (dist < best_dist) {
          best_dist = dist;
          best = c;
        }
      }
      if (iter == 0 || labels[t] != best) changed = true;
      labels[t] = best;
    }
    if (!changed) break;

    std::fill(counts.begin(), counts.end(), 0);
    std::vector<double> sums(k * d, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      ++counts[labels[t]];
      const auto p = point(t);
      for (std::size_t j = 0; j < d; ++j) sums[labels[t] * d + j] += p[j];
    }
    // Empty clusters keep their previous center.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) centers[c * d + j] = sums[c * d + j] / static_cast<double>(counts[c]);
    }
  }
  return labels;
}

double semantic_entropy(const AudioWindowView& features, std::size_t k) {
  const std::vector<std::size_t> labels = deterministic_kmeans(features, k);
  if (k == 1) return 0.0;
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t l : labels) ++counts[l];
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return std::clamp(h / std::log(static_cast<double>(k)), 0.0, 1.0);
}

double audio_diversity(const AudioWindowView& features, const DiversityMetric& metric) {
  switch (metric.kind) {
    case DiversityMetricKind::MeanPairwiseEuclidean: return mean_pairwise_euclidean(features);
    case DiversityMetricKind::PcaTop1ExplainedVariance: return pca_top1_explained_variance(features).value;
    case DiversityMetricKind::PcaCumulativeVariance: return pca_cumulative_variance(features, metric.k).value;
    case DiversityMetricKind::SemanticEntropy: return semantic_entropy(features, metric.k);
  }
  return 0.0;
}

}  // namespace isexplore
