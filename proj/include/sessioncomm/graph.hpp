#ifndef SESSIONCOMM_GRAPH_HPP
#define SESSIONCOMM_GRAPH_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sessioncomm/kernels.hpp"
#include "sessioncomm/log_ingest.hpp"

namespace sessioncomm {

struct Edge {
  std::size_t p = 0;
  std::size_t q = 0;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

/// Directed session-overlap graph S. Row index i corresponds to
/// session_ids[i]; weights are in (0, 1] and the diagonal is never stored.
class SessionGraph {
 public:
  SessionGraph() = default;
  /// Takes a square matrix and its row -> session id map.
  SessionGraph(CsrMatrix forward, std::vector<std::size_t> session_ids);
  /// Session ids 0..n-1.
  static SessionGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return forward_.rows; }
  std::size_t edge_count() const { return forward_.nnz(); }
  bool empty() const { return size() == 0; }

  const CsrMatrix& forward() const { return forward_; }
  const CsrMatrix& transpose() const { return transpose_; }
  const std::vector<std::size_t>& session_ids() const { return session_ids_; }

  std::optional<double> weight(std::size_t p, std::size_t q) const;
  /// Edges in row-major order.
  std::vector<Edge> edges() const;

  /// Returns a copy with every weight multiplied by `factor` (tests only;
  /// scaled graphs leave the (0, 1] range).
  SessionGraph scaled(double factor) const;

 private:
  CsrMatrix forward_;
  CsrMatrix transpose_;
  std::vector<std::size_t> session_ids_;
};

class EmptySessionError : public std::invalid_argument {
 public:
  explicit EmptySessionError(std::size_t session_id);
  std::size_t session_id() const noexcept { return session_id_; }

 private:
  std::size_t session_id_;
};

struct GraphOptions {
  /// Objects accessed in more than this fraction of sessions are dropped
  /// before construction. 1.0 disables the filter.
  double popular_fraction = 1.0;
};

/// Interned object sets plus the inverted object index.
struct ObjectIndex {
  OverlapInput overlap;
  std::vector<std::string> objects;  // object index -> id
  std::size_t dropped_objects = 0;
};

ObjectIndex index_objects(std::span<const Session> sessions, const GraphOptions& options = {});

SessionGraph build_similarity(std::span<const Session> sessions, const GraphOptions& options = {});

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t components = 0;  // weakly connected, isolated nodes included
  std::size_t isolated = 0;
  /// Bin i counts weights in (i/10, (i+1)/10].
  std::array<std::size_t, 10> weight_histogram{};
};

GraphStats graph_stats(const SessionGraph& graph);

/// Component label per node, labels dense in order of first node.
std::vector<std::size_t> weak_components(const SessionGraph& graph);

}  // namespace sessioncomm

#endif  // SESSIONCOMM_GRAPH_HPP
