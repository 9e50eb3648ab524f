#include "sessioncomm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace sessioncomm {

namespace {

void check_distance_matrix(const DistanceMatrix& d) {
  for (std::size_t i = 0; i < d.k; ++i) {
    if (d(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < i; ++j) {
      if (d(i, j) != d(j, i)) throw std::invalid_argument("distance matrix must be symmetric");
      if (!std::isfinite(d(i, j)) || d(i, j) < 0.0) {
        throw std::invalid_argument("distances must be finite and non-negative");
      }
    }
  }
}

}  // namespace

Dendrogram complete_linkage(const DistanceMatrix& d) {
  const std::size_t k = d.k;
  if (k < 2) throw std::invalid_argument("complete linkage needs at least 2 communities");
  check_distance_matrix(d);

  // Slot s always holds the cluster whose smallest member is s.
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < k; ++i) members[i] = {i};
  std::vector<bool> active(k, true);
  std::vector<double> dist = d.values;

  Dendrogram out;
  out.leaves = k;
  for (std::size_t step = 0; step + 1 < k; ++step) {
    std::size_t best_a = 0, best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < k; ++b) {
        if (active[b] && dist[a * k + b] < best) {
          best = dist[a * k + b];
          best_a = a;
          best_b = b;
        }
      }
    }
    out.merges.push_back({members[best_a], members[best_b], best});

    for (std::size_t x = 0; x < k; ++x) {
      if (!active[x] || x == best_a || x == best_b) continue;
      const double m = std::max(dist[best_a * k + x], dist[best_b * k + x]);
      dist[best_a * k + x] = dist[x * k + best_a] = m;
    }
    members[best_a].insert(members[best_a].end(), members[best_b].begin(), members[best_b].end());
    std::sort(members[best_a].begin(), members[best_a].end());
    active[best_b] = false;
  }
  return out;
}

std::vector<double> merge_heights(const Dendrogram& dendrogram) {
  std::vector<double> h;
  h.reserve(dendrogram.merges.size());
  for (const auto& m : dendrogram.merges) h.push_back(m.height);
  return h;
}

DistanceMatrix cophenetic(const Dendrogram& dendrogram) {
  const std::size_t k = dendrogram.leaves;
  auto out = DistanceMatrix::from_values(k, std::vector<double>(k * k, 0.0));
  for (const auto& m : dendrogram.merges) {
    for (auto a : m.cluster_a) {
      for (auto b : m.cluster_b) out(a, b) = out(b, a) = m.height;
    }
  }
  return out;
}

namespace {

constexpr double kMinEmbeddedDistance = 1e-12;

double planar_distance(const Point2& a, const Point2& b) {
  return std::max(std::hypot(a[0] - b[0], a[1] - b[1]), kMinEmbeddedDistance);
}

double stress_of(const std::vector<double>& delta, std::size_t k, double scale, std::span<const Point2> y) {
  double e = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dij = delta[i * k + j];
      const double diff = dij - planar_distance(y[i], y[j]);
      e += diff * diff / dij;
    }
  }
  return e / scale;
}

}  // namespace

double sammon_stress(const DistanceMatrix& d, std::span<const Point2> points) {
  double scale = 0.0;
  for (std::size_t i = 0; i < d.k; ++i) {
    for (std::size_t j = i + 1; j < d.k; ++j) scale += d(i, j);
  }
  return stress_of(d.values, d.k, scale, points);
}

Embedding2D sammon(const DistanceMatrix& d, const SammonConfig& config, std::optional<std::vector<Point2>> initial) {
  const std::size_t k = d.k;
  if (k < 3) throw std::invalid_argument("sammon needs at least 3 communities");
  if (config.max_iterations == 0 || !(config.magic_factor > 0.0) || !(config.tolerance > 0.0)) {
    throw std::invalid_argument("sammon: iterations, magic factor and tolerance must be positive");
  }
  check_distance_matrix(d);

  Embedding2D out;
  std::vector<double> delta = d.values;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (delta[i * k + j] == 0.0) {
        delta[i * k + j] = delta[j * k + i] = 1e-9;
        ++out.perturbed_pairs;
      }
    }
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!(delta[i * k + j] > 0.0)) throw std::invalid_argument("sammon: zero input distance");
      scale += delta[i * k + j];
    }
  }

  std::vector<Point2> y;
  if (initial) {
    if (initial->size() != k) throw std::invalid_argument("sammon: initial layout has wrong size");
    y = std::move(*initial);
  } else {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    y.resize(k);
    for (auto& p : y) {
      p[0] = uniform(rng);
      p[1] = uniform(rng);
    }
  }

  double stress = stress_of(delta, k, scale, y);
  out.stress_history.push_back(stress);
  std::vector<Point2> step(k), trial(k);

  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    for (std::size_t p = 0; p < k; ++p) {
      for (int m = 0; m < 2; ++m) {
        double g = 0.0, h = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          if (j == p) continue;
          const double dpj = delta[p * k + j];
          const double e = planar_distance(y[p], y[j]);
          const double diff = dpj - e;
          const double dy = y[p][m] - y[j][m];
          g += diff / (e * dpj) * dy;
          h += (diff - dy * dy / e * (1.0 + diff / e)) / (dpj * e);
        }
        g *= -2.0 / scale;
        h *= -2.0 / scale;
        step[p][m] = h == 0.0 ? 0.0 : g / std::abs(h);
      }
    }

    double factor = config.magic_factor;
    bool accepted = false;
    double trial_stress = stress;
    for (int halving = 0; halving <= 30; ++halving, factor *= 0.5) {
      for (std::size_t p = 0; p < k; ++p) {
        trial[p] = {y[p][0] - factor * step[p][0], y[p][1] - factor * step[p][1]};
      }
      trial_stress = stress_of(delta, k, scale, trial);
      if (trial_stress < stress) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    const double improvement = stress - trial_stress;
    y.swap(trial);
    stress = trial_stress;
    out.stress_history.push_back(stress);
    out.iterations = it;
    if (improvement < config.tolerance) break;
  }

  out.points = std::move(y);
  out.stress = stress;
  return out;
}

double embedding_spread(std::span<const Point2> points) {
  if (points.size() < 2) return 0.0;
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j, ++pairs) {
      total += std::hypot(points[i][0] - points[j][0], points[i][1] - points[j][1]);
    }
  }
  return total / static_cast<double>(pairs);
}

}  // namespace sessioncomm
