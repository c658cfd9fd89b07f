#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "isexplore/windowing.hpp"

namespace isexplore {

enum class DiversityMetricKind {
  MeanPairwiseEuclidean,
  PcaTop1ExplainedVariance,
  PcaCumulativeVariance,
  SemanticEntropy,
};

struct DiversityMetric {
  DiversityMetricKind kind = DiversityMetricKind::MeanPairwiseEuclidean;
  // Component count (PcaCumulativeVariance) or cluster count (SemanticEntropy).
  std::size_t k = 8;

  bool operator==(const DiversityMetric&) const = default;
};

// CLI spelling: pairwise-euclidean, pca-top1, pca-cumulative, semantic-entropy.
std::string to_string(DiversityMetricKind kind);
DiversityMetricKind parse_diversity_kind(const std::string& name);

// Share of total variance; `degenerate` is set when the window has zero
// total variance, in which case value is defined as 1.0.
struct VarianceRatio {
  double value = 1.0;
  bool degenerate = false;
};

// Mean L2 distance over all unordered row pairs.
double mean_pairwise_euclidean(const AudioWindowView& features);

// Eigenvalues of the row-centered sample covariance, descending, clamped at 0.
// When T <= d the nonzero spectrum is taken from the T x T Gram matrix and the
// remainder is zero-filled, so the result always has d entries.
std::vector<double> covariance_eigenvalues(const AudioWindowView& features);

VarianceRatio pca_top1_explained_variance(const AudioWindowView& features);
VarianceRatio pca_cumulative_variance(const AudioWindowView& features, std::size_t k);

// Normalized Shannon entropy of cluster sizes after a deterministic k-means
// (farthest-point seeding from row 0, at most 50 Lloyd iterations).
double semantic_entropy(const AudioWindowView& features, std::size_t k);

// Cluster labels from the same procedure; exposed for inspection and tests.
std::vector<std::size_t> deterministic_kmeans(const AudioWindowView& features, std::size_t k);

inline constexpr int kKMeansMaxIterations = 50;

// Scalar D for the configured metric.
double audio_diversity(const AudioWindowView& features, const DiversityMetric& metric);

}  // namespace isexplore
