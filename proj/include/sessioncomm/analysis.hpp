#ifndef SESSIONCOMM_ANALYSIS_HPP
#define SESSIONCOMM_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sessioncomm/evaluate.hpp"

namespace sessioncomm {

struct Merge {
  std::vector<std::size_t> cluster_a;  // sorted members; contains the smaller index
  std::vector<std::size_t> cluster_b;
  double height = 0.0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Agglomerative clustering with maximum cross-pair distance. Every step
/// merges the closest pair of clusters; ties go to the pair whose
/// (smallest member, smallest member) is lexicographically lowest.
Dendrogram complete_linkage(const DistanceMatrix& d);

std::vector<double> merge_heights(const Dendrogram& dendrogram);

/// Height of the merge that first joins a and b.
DistanceMatrix cophenetic(const Dendrogram& dendrogram);

struct SammonConfig {
  std::size_t max_iterations = 500;
  double magic_factor = 0.3;
  double tolerance = 1e-9;  // on stress decrease between iterations
  std::uint64_t seed = 0;
};

using Point2 = std::array<double, 2>;

struct Embedding2D {
  std::vector<Point2> points;
  double stress = 0.0;
  std::size_t iterations = 0;
  /// Stress after initialization and after every accepted step.
  std::vector<double> stress_history;
  /// Off-diagonal zero distances raised to 1e-9.
  std::size_t perturbed_pairs = 0;
};

double sammon_stress(const DistanceMatrix& d, std::span<const Point2> points);

/// Sammon's mapping by diagonal-Newton descent with step halving. Random
/// start in [-1, 1]^2 from the seed unless `initial` is given.
Embedding2D sammon(const DistanceMatrix& d, const SammonConfig& config = {},
                   std::optional<std::vector<Point2>> initial = std::nullopt);

/// Mean pairwise distance of the embedded points.
double embedding_spread(std::span<const Point2> points);

}  // namespace sessioncomm

#endif  // SESSIONCOMM_ANALYSIS_HPP
