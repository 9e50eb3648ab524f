#ifndef SESSIONCOMM_TEST_ORACLES_HPP
#define SESSIONCOMM_TEST_ORACLES_HPP

// Test-only reference implementations. None of these call into the library
// code paths they are used to check.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sessioncomm/analysis.hpp"
#include "sessioncomm/graph.hpp"
#include "sessioncomm/log_ingest.hpp"

namespace oracle {

/// Eigenvalues descending with matching eigenvector columns.
struct DenseEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
DenseEigen symmetric_eigen(const Eigen::MatrixXd& m);

Eigen::MatrixXd dense_adjacency(const sessioncomm::SessionGraph& g);

/// Set overlap weight of every ordered pair by direct set intersection.
std::map<std::pair<std::size_t, std::size_t>, double> brute_similarity(
    const std::vector<sessioncomm::Session>& sessions);

/// Timestamps of each session of one user's records, split by gaps greater
/// than the threshold after a stable sort.
std::vector<std::vector<std::int64_t>> brute_user_sessions(std::vector<sessioncomm::AccessRecord> records,
                                                           std::int64_t threshold);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Complete-linkage merge heights by rescanning every cross pair at each step.
std::vector<double> brute_linkage_heights(const std::vector<double>& d, std::size_t k);

/// sin of the angle between a unit vector and the span of orthonormal columns.
double subspace_sin(const Eigen::VectorXd& v, const Eigen::MatrixXd& basis);

/// Random sessions over `objects` objects, each with 1..max_set distinct objects.
std::vector<sessioncomm::Session> random_sessions(std::mt19937_64& rng, std::size_t n, std::size_t objects,
                                                  std::size_t max_set);

/// Lowest Sammon stress found by central-difference gradient descent from
/// `restarts` random layouts.
double sammon_restart_minimum(const std::vector<double>& d, std::size_t k, std::size_t restarts,
                              std::uint64_t seed);

}  // namespace oracle

#endif
