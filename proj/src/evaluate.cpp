#include "sessioncomm/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <stdexcept>

#include "sessioncomm/csv.hpp"

namespace sessioncomm {

Ranking rank_sessions(std::span<const double> weights) {
  const std::size_t n = weights.size();
  Ranking r;
  r.weight.assign(weights.begin(), weights.end());
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  r.rank.assign(n, 0.0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && weights[r.order[j + 1]] == weights[r.order[i]]) ++j;
    // positions i..j (0-based) share rank mean(i+1 .. j+1)
    const double avg = 0.5 * static_cast<double>(i + j + 2);
    for (std::size_t t = i; t <= j; ++t) r.rank[r.order[t]] = avg;
    i = j + 1;
  }
  return r;
}

Ranking rank_sessions(const Community& community) { return rank_sessions(community.authority); }

double spearman(std::span<const double> rank_a, std::span<const double> rank_b) {
  if (rank_a.size() != rank_b.size()) throw std::invalid_argument("spearman: rankings differ in length");
  const std::size_t n = rank_a.size();
  if (n < 2) throw std::invalid_argument("spearman: needs at least 2 sessions");
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rank_a[i] - rank_b[i];
    sum_sq += r * r;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * sum_sq / (nn * (nn * nn - 1.0));
}

double spearman(const Ranking& a, const Ranking& b) { return spearman(a.rank, b.rank); }

DistanceMatrix DistanceMatrix::from_values(std::size_t k, std::vector<double> values) {
  if (values.size() != k * k) throw std::invalid_argument("distance matrix: expected k*k values");
  DistanceMatrix d;
  d.k = k;
  d.values = std::move(values);
  for (std::size_t i = 0; i < k; ++i) d.labels.push_back("C" + std::to_string(i + 1));
  return d;
}

DistanceMatrix distance_matrix(std::span<const Ranking> rankings) {
  const std::size_t k = rankings.size();
  if (k < 2) throw std::invalid_argument("distance matrix needs at least 2 communities");
  auto d = DistanceMatrix::from_values(k, std::vector<double>(k * k, 0.0));
  const auto pairs = static_cast<std::ptrdiff_t>(k * k);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < pairs; ++idx) {
    const auto a = static_cast<std::size_t>(idx) / k;
    const auto b = static_cast<std::size_t>(idx) % k;
    if (a >= b) continue;
    const double s = std::clamp(spearman(rankings[a], rankings[b]), -1.0, 1.0);
    d(a, b) = d(b, a) = 1.0 - s;
  }
  return d;
}

std::vector<std::string> community_labels(const CommunitySpectrum& spectrum) {
  std::vector<std::string> labels;
  std::size_t c = 0;
  for (const auto& comm : spectrum.communities) {
    if (comm.pole != "-") ++c;
    labels.push_back("C" + std::to_string(c) + comm.pole);
  }
  return labels;
}

DistanceMatrix distance_matrix(const CommunitySpectrum& spectrum) {
  std::vector<Ranking> rankings;
  for (const auto& c : spectrum.communities) rankings.push_back(rank_sessions(c));
  auto d = distance_matrix(rankings);
  d.labels = community_labels(spectrum);
  return d;
}

SplitSize SplitSize::parse(std::string_view text) {
  if (text == "half") return {true, 0};
  SplitSize s;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), s.count);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("split must be a non-negative integer or 'half'");
  }
  return s;
}

MembershipSplit split_membership(const Ranking& ranking, std::size_t n) {
  const std::size_t total = ranking.size();
  if (2 * n > total) {
    throw std::invalid_argument("split size " + std::to_string(n) + " needs at least " + std::to_string(2 * n) +
                                " sessions, have " + std::to_string(total));
  }
  MembershipSplit s;
  s.n = n;
  const auto& order = ranking.order;
  s.members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
  s.indifferent.assign(order.begin() + static_cast<std::ptrdiff_t>(n),
                       order.end() - static_cast<std::ptrdiff_t>(n));
  s.non_members.assign(order.end() - static_cast<std::ptrdiff_t>(n), order.end());
  return s;
}

MembershipSplit split_membership(const Ranking& ranking, SplitSize size) {
  return split_membership(ranking, size.resolve(ranking.size()));
}

DocumentFrequency::DocumentFrequency(std::span<const Session> sessions) : total_(sessions.size()) {
  for (const auto& s : sessions) {
    for (const auto& [obj, count] : s.object_counts) ++df_[obj];
  }
}

std::size_t DocumentFrequency::count(std::string_view object_id) const {
  auto it = df_.find(std::string(object_id));
  return it == df_.end() ? 0 : it->second;
}

double DocumentFrequency::idf(std::string_view object_id) const {
  const std::size_t n_o = count(object_id);
  if (n_o == 0) throw std::invalid_argument("object '" + std::string(object_id) + "' was never accessed");
  return std::log(static_cast<double>(total_) / static_cast<double>(n_o));
}

double idf(std::string_view object_id, std::span<const Session> sessions) {
  return DocumentFrequency(sessions).idf(object_id);
}

CategoryCatalog read_catalog(std::istream& in) {
  CategoryCatalog catalog;
  std::string raw;
  std::size_t line_number = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string_view line = csv::strip_cr(raw);
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != 2) {
      throw std::invalid_argument("catalog line " + std::to_string(line_number) + ": expected object_id,category");
    }
    if (!header) {
      header = true;
      if (csv::trim((*fields)[0]) == "object_id" && csv::trim((*fields)[1]) == "category") continue;
      throw std::invalid_argument("catalog: missing header 'object_id,category'");
    }
    auto obj = std::string(csv::trim((*fields)[0]));
    auto cat = std::string(csv::trim((*fields)[1]));
    if (obj.empty() || cat.empty()) {
      throw std::invalid_argument("catalog line " + std::to_string(line_number) + ": empty field");
    }
    catalog[obj].insert(cat);
  }
  return catalog;
}

namespace {

std::vector<ScoredLabel> sorted_labels(const std::map<std::string, double>& scores, bool descending) {
  std::vector<ScoredLabel> out;
  for (const auto& [label, score] : scores) out.push_back({label, score});
  std::stable_sort(out.begin(), out.end(), [&](const ScoredLabel& a, const ScoredLabel& b) {
    return descending ? a.score > b.score : a.score < b.score;
  });
  return out;
}

}  // namespace

CommunityScores score_objects(const MembershipSplit& split, std::span<const Session> sessions,
                              const DocumentFrequency& df, const CategoryCatalog* catalog, std::size_t top) {
  CommunityScores out;
  auto accumulate = [&](const std::vector<std::size_t>& rows, double sign) {
    for (auto row : rows) {
      for (const auto& [obj, tf] : sessions[row].object_counts) {
        out.objects[obj] += sign * static_cast<double>(tf) * df.idf(obj);
      }
    }
  };
  accumulate(split.members, 1.0);
  accumulate(split.non_members, -1.0);

  if (catalog != nullptr) {
    for (const auto& [obj, score] : out.objects) {
      auto it = catalog->find(obj);
      if (it == catalog->end()) continue;
      for (const auto& cat : it->second) out.categories[cat] += score;
    }
  }
  const auto& ranked = catalog != nullptr ? out.categories : out.objects;
  auto best = sorted_labels(ranked, true);
  auto worst = sorted_labels(ranked, false);
  best.resize(std::min(top, best.size()));
  worst.resize(std::min(top, worst.size()));
  out.best = std::move(best);
  out.worst = std::move(worst);
  return out;
}

std::size_t count_unranked_sessions(const CommunitySpectrum& spectrum) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < spectrum.n; ++i) {
    bool zero = true;
    for (const auto& c : spectrum.communities) zero = zero && c.authority[i] == 0.0;
    if (zero) ++count;
  }
  return count;
}

}  // namespace sessioncomm
