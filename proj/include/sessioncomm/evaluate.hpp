#ifndef SESSIONCOMM_EVALUATE_HPP
#define SESSIONCOMM_EVALUATE_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sessioncomm/log_ingest.hpp"
#include "sessioncomm/spectral.hpp"

namespace sessioncomm {

/// Ranks of the sessions of one community. rank[i] belongs to session row i;
/// 1 is the highest authority weight and tied weights share the average of
/// the positions they cover.
struct Ranking {
  std::vector<double> rank;
  std::vector<double> weight;
  /// Session rows from best to worst, ties by ascending row.
  std::vector<std::size_t> order;

  std::size_t size() const { return rank.size(); }
};

Ranking rank_sessions(std::span<const double> weights);
Ranking rank_sessions(const Community& community);

/// 1 - 6 sum(r^2) / (N (N^2 - 1)) over per-session rank differences r.
double spearman(std::span<const double> rank_a, std::span<const double> rank_b);
double spearman(const Ranking& a, const Ranking& b);

/// Symmetric k x k matrix of 1 - spearman, exact zero diagonal.
struct DistanceMatrix {
  std::size_t k = 0;
  std::vector<double> values;  // row-major
  std::vector<std::string> labels;

  double operator()(std::size_t a, std::size_t b) const { return values[a * k + b]; }
  double& operator()(std::size_t a, std::size_t b) { return values[a * k + b]; }

  static DistanceMatrix from_values(std::size_t k, std::vector<double> values);
};

DistanceMatrix distance_matrix(std::span<const Ranking> rankings);
DistanceMatrix distance_matrix(const CommunitySpectrum& spectrum);

/// Community labels C1..Ck (pole suffix for split communities).
std::vector<std::string> community_labels(const CommunitySpectrum& spectrum);

/// Either an absolute count or half of the sessions.
struct SplitSize {
  bool half = false;
  std::size_t count = 0;

  static SplitSize parse(std::string_view text);
  std::size_t resolve(std::size_t sessions) const { return half ? sessions / 2 : count; }
};

struct MembershipSplit {
  std::vector<std::size_t> members;      // best first
  std::vector<std::size_t> non_members;  // worst last
  std::vector<std::size_t> indifferent;
  std::size_t n = 0;
};

MembershipSplit split_membership(const Ranking& ranking, std::size_t n);
MembershipSplit split_membership(const Ranking& ranking, SplitSize size);

/// Session frequencies of every object, for idf.
class DocumentFrequency {
 public:
  explicit DocumentFrequency(std::span<const Session> sessions);
  std::size_t sessions() const { return total_; }
  std::size_t count(std::string_view object_id) const;
  /// ln(N / N_o). Throws for objects never accessed.
  double idf(std::string_view object_id) const;

 private:
  std::size_t total_ = 0;
  std::unordered_map<std::string, std::size_t> df_;
};

double idf(std::string_view object_id, std::span<const Session> sessions);

/// object -> categories.
using CategoryCatalog = std::map<std::string, std::set<std::string>>;

CategoryCatalog read_catalog(std::istream& in);

struct ScoredLabel {
  std::string label;
  double score = 0.0;
};

struct CommunityScores {
  std::map<std::string, double> objects;
  std::map<std::string, double> categories;
  std::vector<ScoredLabel> best;   // highest first
  std::vector<ScoredLabel> worst;  // lowest first
};

/// Objects accessed by members score +tf*idf per member session, objects
/// accessed by non-members -tf*idf. With a catalog, categories sum their
/// objects' scores and best/worst list categories; otherwise objects.
CommunityScores score_objects(const MembershipSplit& split, std::span<const Session> sessions,
                              const DocumentFrequency& df, const CategoryCatalog* catalog,
                              std::size_t top = 3);

/// Sessions whose authority weight is zero in every community.
std::size_t count_unranked_sessions(const CommunitySpectrum& spectrum);

}  // namespace sessioncomm

#endif  // SESSIONCOMM_EVALUATE_HPP
