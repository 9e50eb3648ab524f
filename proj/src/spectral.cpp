#include "sessioncomm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

namespace sessioncomm {

namespace kern = kernels::omp;

void AuthorityOperator::apply(std::span<const double> x, std::span<double> y) const {
  std::vector<double> tmp(graph_.size());
  kern::spmv(graph_.forward(), x, tmp);
  kern::spmv(graph_.transpose(), tmp, y);
}

void HubOperator::apply(std::span<const double> x, std::span<double> y) const {
  std::vector<double> tmp(graph_.size());
  kern::spmv(graph_.transpose(), x, tmp);
  kern::spmv(graph_.forward(), tmp, y);
}

DenseOperator::DenseOperator(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != n * n) throw std::invalid_argument("DenseOperator: expected n*n values");
}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += values_[i * n_ + j] * x[j];
    y[i] = s;
  }
}

namespace {

std::string format_message(std::size_t pair_index, double residual, std::size_t iterations) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "eigenpair %zu did not converge after %zu iterations (residual %.3e)", pair_index,
                iterations, residual);
  return buf;
}

}  // namespace

ConvergenceError::ConvergenceError(std::size_t pair_index, double residual, std::size_t iterations)
    : std::runtime_error(format_message(pair_index, residual, iterations)),
      pair_index_(pair_index),
      residual_(residual) {}

bool normalize_sign(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v.empty() || v[best] >= 0.0) return false;
  for (auto& x : v) x = -x;
  return true;
}

namespace {

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
}

void scale(double alpha, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] *= alpha;
}

// Classical Gram-Schmidt, applied twice.
void project_out(std::span<double> v, std::span<const std::vector<double>* const> basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto* b : basis) axpy(-kern::dot(*b, v), *b, v);
  }
}

std::vector<double> random_unit(std::size_t n, std::mt19937_64& rng,
                                std::span<const std::vector<double>* const> basis) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    std::vector<double> v(n);
    for (auto& x : v) x = normal(rng);
    project_out(v, basis);
    double len = norm2(v);
    if (len > 1e-8) {
      scale(1.0 / len, v);
      return v;
    }
  }
}

// Orthonormalizes `block` in place against `basis` and against itself.
// Columns that collapse (the iterate had no component outside the span) are
// replaced by fresh random directions.
void orthonormalize(std::vector<std::vector<double>>& block, std::vector<const std::vector<double>*> basis,
                    std::mt19937_64& rng) {
  for (auto& v : block) {
    const double before = norm2(v);
    project_out(v, basis);
    const double len = norm2(v);
    if (before > 0.0 && len > 1e-10 * before) {
      scale(1.0 / len, v);
    } else {
      v = random_unit(v.size(), rng, basis);
    }
    basis.push_back(&v);
  }
}

// Cyclic Jacobi on a small symmetric row-major matrix. Returns eigenvalues in
// descending order; column j of `vectors` (row-major, m x m) pairs with value j.
std::vector<double> jacobi_eigen(std::vector<double> a, std::size_t m, std::vector<double>& vectors) {
  vectors.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) vectors[i * m + i] = 1.0;
  double frob = 0.0;
  for (double x : a) frob += x * x;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) off += a[p * m + q] * a[p * m + q];
    }
    if (off <= 1e-32 * frob) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (std::size_t r = 0; r < m; ++r) {
          const double arp = a[r * m + p], arq = a[r * m + q];
          a[r * m + p] = c * arp - sn * arq;
          a[r * m + q] = sn * arp + c * arq;
        }
        for (std::size_t r = 0; r < m; ++r) {
          const double apr = a[p * m + r], aqr = a[q * m + r];
          a[p * m + r] = c * apr - sn * aqr;
          a[q * m + r] = sn * apr + c * aqr;
        }
        for (std::size_t r = 0; r < m; ++r) {
          const double vrp = vectors[r * m + p], vrq = vectors[r * m + q];
          vectors[r * m + p] = c * vrp - sn * vrq;
          vectors[r * m + q] = sn * vrp + c * vrq;
        }
      }
    }
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x * m + x] > a[y * m + y]; });
  std::vector<double> values(m), sorted(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    values[j] = a[order[j] * m + order[j]];
    for (std::size_t r = 0; r < m; ++r) sorted[r * m + j] = vectors[r * m + order[j]];
  }
  vectors = std::move(sorted);
  return values;
}

// out_j = sum_i block_i * y(i, j) for the columns j in [first, m).
std::vector<std::vector<double>> combine(const std::vector<std::vector<double>>& block, const std::vector<double>& y,
                                         std::size_t m, std::size_t first) {
  const std::size_t n = block.front().size();
  std::vector<std::vector<double>> out(m - first, std::vector<double>(n, 0.0));
  for (std::size_t j = first; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) axpy(y[i * m + j], block[i], out[j - first]);
  }
  return out;
}

}  // namespace

std::vector<EigenPair> top_k_eigenpairs(const LinearOperator& op, std::size_t k, const PowerIterConfig& config,
                                        std::span<const std::vector<double>> deflate) {
  const std::size_t n = op.size();
  if (k + deflate.size() > n) throw std::invalid_argument("k exceeds operator dimension");
  if (!(config.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (config.max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");

  std::vector<EigenPair> pairs;
  if (k == 0) return pairs;
  pairs.reserve(k);
  std::mt19937_64 rng(config.seed);
  std::vector<const std::vector<double>*> basis;
  for (const auto& d : deflate) basis.push_back(&d);

  // Block power iteration: the iterate is a block of vectors, re-orthogonalized
  // against the deflation set and all locked pairs at every step. Ritz values
  // of the block separate close eigenvalues that single vectors resolve slowly.
  const std::size_t block = std::min(n - deflate.size(), 2 * k + 2);
  std::vector<std::vector<double>> v(block, std::vector<double>(n));
  orthonormalize(v, basis, rng);

  std::vector<std::vector<double>> w;
  std::vector<double> h, y, diff(n);
  double residual = 0.0;
  std::size_t it = 0;
  while (pairs.size() < k) {
    if (it == config.max_iterations) throw ConvergenceError(pairs.size(), residual, it);
    ++it;
    const std::size_t m = v.size();
    w.assign(m, std::vector<double>(n));
    for (std::size_t j = 0; j < m; ++j) {
      op.apply(v[j], w[j]);
      project_out(w[j], basis);
    }
    h.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        const double hij = 0.5 * (kern::dot(v[i], w[j]) + kern::dot(v[j], w[i]));
        h[i * m + j] = h[j * m + i] = hij;
      }
    }
    const auto theta = jacobi_eigen(h, m, y);
    auto x = combine(v, y, m, 0);
    auto mx = combine(w, y, m, 0);

    const double ref = std::max(pairs.empty() ? theta.front() : pairs.front().value, 1.0);
    std::size_t locked = 0;
    for (; locked < m && pairs.size() < k; ++locked) {
      std::copy(mx[locked].begin(), mx[locked].end(), diff.begin());
      axpy(-theta[locked], x[locked], diff);
      residual = norm2(diff);
      if (residual > config.tolerance * ref) break;
      // One more power step, so the vector lies in the operator's range and
      // sessions without edges get exact zeros.
      if (theta[locked] > 1e-8 * ref) {
        auto polished = std::move(mx[locked]);
        project_out(polished, basis);
        const double len = norm2(polished);
        if (len > 0.0) {
          scale(1.0 / len, polished);
          x[locked] = std::move(polished);
        }
      }
      normalize_sign(x[locked]);
      pairs.push_back({std::max(theta[locked], 0.0), std::move(x[locked]), it, residual});
      basis.push_back(&pairs.back().vector);
    }
    if (pairs.size() == k) break;
    v.assign(std::make_move_iterator(mx.begin() + static_cast<std::ptrdiff_t>(locked)),
             std::make_move_iterator(mx.end()));
    orthonormalize(v, basis, rng);
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) { return a.value > b.value; });
  return pairs;
}

CommunitySpectrum find_communities(const SessionGraph& graph, const PowerIterConfig& config) {
  if (graph.empty()) throw std::invalid_argument("graph is empty");
  if (config.k == 0 || config.k > graph.size()) throw std::invalid_argument("k must be in [1, n]");

  AuthorityOperator authority(graph);
  auto pairs = top_k_eigenpairs(authority, config.k, config);

  CommunitySpectrum spectrum;
  spectrum.n = graph.size();
  spectrum.config = config;
  const std::size_t n = graph.size();
  std::vector<double> av(n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Community c;
    c.index = i;
    c.authority = std::move(pairs[i].vector);
    c.iterations = pairs[i].iterations;
    c.residual = pairs[i].residual;
    authority.apply(c.authority, av);
    c.eigenvalue = std::max(kern::dot(c.authority, av), 0.0);

    c.hub.assign(n, 0.0);
    kern::spmv(graph.forward(), c.authority, c.hub);
    const double len = norm2(c.hub);
    // Below this the singular value is indistinguishable from zero.
    if (len * len > 10.0 * config.tolerance * std::max(1.0, pairs.front().value)) {
      scale(1.0 / len, c.hub);
    } else {
      c.hub.clear();
    }
    spectrum.communities.push_back(std::move(c));
  }
  // Rayleigh quotients can swap the last bit inside a degenerate cluster.
  std::stable_sort(spectrum.communities.begin(), spectrum.communities.end(),
                   [](const Community& a, const Community& b) { return a.eigenvalue > b.eigenvalue; });
  for (std::size_t i = 0; i < spectrum.communities.size(); ++i) spectrum.communities[i].index = i;

  // Hubs of vanishing singular values: complete an orthonormal hub basis
  // from the null space of S S^T.
  std::vector<std::vector<double>> known;
  std::size_t missing = 0;
  for (const auto& c : spectrum.communities) {
    if (c.hub.empty()) {
      ++missing;
    } else {
      known.push_back(c.hub);
    }
  }
  if (missing > 0) {
    HubOperator hub_op(graph);
    PowerIterConfig hub_config = config;
    hub_config.seed = config.seed ^ 0x9e3779b97f4a7c15ULL;
    auto extra = top_k_eigenpairs(hub_op, missing, hub_config, known);
    std::size_t next = 0;
    for (auto& c : spectrum.communities) {
      if (c.hub.empty()) c.hub = std::move(extra[next++].vector);
    }
  }
  return spectrum;
}

CommunitySpectrum split_poles(const CommunitySpectrum& spectrum) {
  CommunitySpectrum out;
  out.n = spectrum.n;
  out.config = spectrum.config;
  out.config.split_poles = true;
  for (const auto& c : spectrum.communities) {
    if (c.index == 0) {
      out.communities.push_back(c);
      continue;
    }
    Community pos = c;
    pos.pole = "+";
    Community neg = c;
    neg.pole = "-";
    for (auto& x : neg.authority) x = -x;
    for (auto& x : neg.hub) x = -x;
    out.communities.push_back(std::move(pos));
    out.communities.push_back(std::move(neg));
  }
  for (std::size_t i = 0; i < out.communities.size(); ++i) out.communities[i].index = i;
  return out;
}

}  // namespace sessioncomm
