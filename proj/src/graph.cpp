#include "sessioncomm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace sessioncomm {

SessionGraph::SessionGraph(CsrMatrix forward, std::vector<std::size_t> session_ids)
    : forward_(std::move(forward)), session_ids_(std::move(session_ids)) {
  if (forward_.rows != forward_.cols) throw std::invalid_argument("SessionGraph: matrix must be square");
  if (session_ids_.size() != forward_.rows) throw std::invalid_argument("SessionGraph: id map size mismatch");
  transpose_ = forward_.transposed();
}

SessionGraph SessionGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<Edge> sorted(edges.begin(), edges.end());
  for (const auto& e : sorted) {
    if (e.p >= n || e.q >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.p == e.q) throw std::invalid_argument("self-loop on node " + std::to_string(e.p));
    if (!(e.weight > 0.0)) throw std::invalid_argument("edge weight must be positive");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return a.p != b.p ? a.p < b.p : a.q < b.q; });
  CsrMatrix m;
  m.rows = m.cols = n;
  m.row_ptr.assign(n + 1, 0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i].p == sorted[i - 1].p && sorted[i].q == sorted[i - 1].q) {
      throw std::invalid_argument("duplicate edge");
    }
    ++m.row_ptr[sorted[i].p + 1];
    m.col.push_back(static_cast<std::uint32_t>(sorted[i].q));
    m.val.push_back(sorted[i].weight);
  }
  for (std::size_t i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return SessionGraph(std::move(m), std::move(ids));
}

std::optional<double> SessionGraph::weight(std::size_t p, std::size_t q) const {
  if (p >= size() || q >= size()) return std::nullopt;
  auto first = forward_.col.begin() + static_cast<std::ptrdiff_t>(forward_.row_ptr[p]);
  auto last = forward_.col.begin() + static_cast<std::ptrdiff_t>(forward_.row_ptr[p + 1]);
  auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(q));
  if (it == last || *it != q) return std::nullopt;
  return forward_.val[static_cast<std::size_t>(it - forward_.col.begin())];
}

std::vector<Edge> SessionGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t p = 0; p < size(); ++p) {
    for (std::size_t k = forward_.row_ptr[p]; k < forward_.row_ptr[p + 1]; ++k) {
      out.push_back({p, forward_.col[k], forward_.val[k]});
    }
  }
  return out;
}

SessionGraph SessionGraph::scaled(double factor) const {
  CsrMatrix m = forward_;
  for (auto& v : m.val) v *= factor;
  return SessionGraph(std::move(m), session_ids_);
}

EmptySessionError::EmptySessionError(std::size_t session_id)
    : std::invalid_argument("session " + std::to_string(session_id) + " has no objects"),
      session_id_(session_id) {}

ObjectIndex index_objects(std::span<const Session> sessions, const GraphOptions& options) {
  ObjectIndex index;
  std::unordered_map<std::string_view, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> raw(sessions.size());
  for (std::size_t s = 0; s < sessions.size(); ++s) {
    if (sessions[s].object_counts.empty()) throw EmptySessionError(sessions[s].session_id);
    for (const auto& [obj, count] : sessions[s].object_counts) {
      auto [it, inserted] = ids.try_emplace(obj, static_cast<std::uint32_t>(index.objects.size()));
      if (inserted) index.objects.push_back(obj);
      raw[s].push_back(it->second);
    }
  }

  std::vector<std::size_t> df(index.objects.size(), 0);
  for (const auto& row : raw) {
    for (auto o : row) ++df[o];
  }
  const double n = static_cast<double>(sessions.size());
  std::vector<bool> keep(index.objects.size(), true);
  for (std::size_t o = 0; o < df.size(); ++o) {
    if (static_cast<double>(df[o]) / n > options.popular_fraction) {
      keep[o] = false;
      ++index.dropped_objects;
    }
  }

  index.overlap.object_rows.assign(index.objects.size(), {});
  index.overlap.row_objects.resize(sessions.size());
  for (std::size_t s = 0; s < raw.size(); ++s) {
    auto& row = index.overlap.row_objects[s];
    for (auto o : raw[s]) {
      if (keep[o]) row.push_back(o);
    }
    std::sort(row.begin(), row.end());
    for (auto o : row) index.overlap.object_rows[o].push_back(static_cast<std::uint32_t>(s));
  }
  return index;
}

SessionGraph build_similarity(std::span<const Session> sessions, const GraphOptions& options) {
  ObjectIndex index = index_objects(sessions, options);
  std::vector<std::size_t> ids;
  ids.reserve(sessions.size());
  for (const auto& s : sessions) ids.push_back(s.session_id);
  return SessionGraph(kernels::omp::overlap_similarity(index.overlap), std::move(ids));
}

std::vector<std::size_t> weak_components(const SessionGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const auto& m = graph.forward();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t k = m.row_ptr[p]; k < m.row_ptr[p + 1]; ++k) {
      auto a = find(p), b = find(m.col[k]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> label(n);
  std::unordered_map<std::size_t, std::size_t> dense;
  for (std::size_t p = 0; p < n; ++p) {
    auto [it, inserted] = dense.try_emplace(find(p), dense.size());
    label[p] = it->second;
  }
  return label;
}

GraphStats graph_stats(const SessionGraph& graph) {
  GraphStats st;
  st.nodes = graph.size();
  st.edges = graph.edge_count();
  auto labels = weak_components(graph);
  st.components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  const auto& m = graph.forward();
  const auto& t = graph.transpose();
  for (std::size_t p = 0; p < st.nodes; ++p) {
    if (m.row_ptr[p] == m.row_ptr[p + 1] && t.row_ptr[p] == t.row_ptr[p + 1]) ++st.isolated;
  }
  for (double w : m.val) {
    auto bin = static_cast<std::size_t>(std::ceil(w * 10.0)) - 1;
    st.weight_histogram[std::min<std::size_t>(bin, 9)]++;
  }
  return st;
}

}  // namespace sessioncomm
