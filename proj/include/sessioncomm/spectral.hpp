#ifndef SESSIONCOMM_SPECTRAL_HPP
#define SESSIONCOMM_SPECTRAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sessioncomm/graph.hpp"

namespace sessioncomm {

/// Symmetric positive semidefinite operator, applied matrix-free.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t size() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
};

/// v -> S^T (S v), two sparse passes. S^T S is never formed.
class AuthorityOperator final : public LinearOperator {
 public:
  explicit AuthorityOperator(const SessionGraph& graph) : graph_(graph) {}
  std::size_t size() const override { return graph_.size(); }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const SessionGraph& graph_;
};

/// v -> S (S^T v).
class HubOperator final : public LinearOperator {
 public:
  explicit HubOperator(const SessionGraph& graph) : graph_(graph) {}
  std::size_t size() const override { return graph_.size(); }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const SessionGraph& graph_;
};

/// Row-major dense symmetric matrix.
class DenseOperator final : public LinearOperator {
 public:
  DenseOperator(std::size_t n, std::vector<double> values);
  std::size_t size() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

struct PowerIterConfig {
  std::size_t k = 10;
  double tolerance = 1e-10;
  std::size_t max_iterations = 10'000;
  std::uint64_t seed = 0;
  bool split_poles = false;

  bool operator==(const PowerIterConfig&) const = default;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t pair_index, double residual, std::size_t iterations);
  std::size_t pair_index() const noexcept { return pair_index_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t pair_index_;
  double residual_;
};

/// Block power iteration with deflation by projection. A block of min(2k + 2,
/// n) vectors is iterated and re-orthogonalized against every accepted pair
/// at each step; Ritz vectors of the block are accepted in order once
/// ||Mv - lambda v|| <= tolerance * max(lambda_0, 1). Pairs are returned by
/// descending eigenvalue with unit, sign-normalized vectors.
/// `deflate` holds extra orthonormal vectors to stay orthogonal to.
std::vector<EigenPair> top_k_eigenpairs(const LinearOperator& op, std::size_t k,
                                        const PowerIterConfig& config,
                                        std::span<const std::vector<double>> deflate = {});

/// Flips v so its largest-magnitude entry (first one on ties) is positive.
/// Returns true when a flip happened.
bool normalize_sign(std::span<double> v);

struct Community {
  std::size_t index = 0;
  double eigenvalue = 0.0;
  std::vector<double> authority;
  std::vector<double> hub;
  std::size_t iterations = 0;
  double residual = 0.0;
  /// "+" or "-" for split non-principal poles, empty otherwise.
  std::string pole;
};

struct CommunitySpectrum {
  std::vector<Community> communities;
  std::size_t n = 0;
  PowerIterConfig config;
};

/// Authority vectors are eigenvectors of S^T S; hubs are S a / ||S a||.
/// When S a vanishes the hub comes from the null space of S S^T instead.
CommunitySpectrum find_communities(const SessionGraph& graph, const PowerIterConfig& config);

/// Replaces every non-principal community by its positive and negative pole
/// (the negative pole ranks sessions by -a).
CommunitySpectrum split_poles(const CommunitySpectrum& spectrum);

}  // namespace sessioncomm

#endif  // SESSIONCOMM_SPECTRAL_HPP
