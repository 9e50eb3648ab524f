#ifndef SESSIONCOMM_IO_HPP
#define SESSIONCOMM_IO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sessioncomm/analysis.hpp"
#include "sessioncomm/evaluate.hpp"
#include "sessioncomm/graph.hpp"
#include "sessioncomm/log_ingest.hpp"
#include "sessioncomm/spectral.hpp"
#include "sessioncomm/synth.hpp"

namespace sessioncomm::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_records_csv(std::ostream& out, const std::vector<AccessRecord>& records);
void write_rejects_csv(std::ostream& out, const std::vector<Reject>& rejects);

void write_sessions_jsonl(std::ostream& out, const std::vector<Session>& sessions);
std::vector<Session> read_sessions_jsonl(std::istream& in);

/// `p,q,weight` with shortest round-trip weights.
void write_edge_list(std::ostream& out, const SessionGraph& graph);
std::vector<Edge> read_edge_list(std::istream& in);

nlohmann::json to_json(const GraphStats& stats);

nlohmann::json to_json(const CommunitySpectrum& spectrum);
CommunitySpectrum spectrum_from_json(const nlohmann::json& j);

/// `session_id,rank,weight`, rows in rank order.
void write_rank_table(std::ostream& out, const Ranking& ranking);

void write_distance_csv(std::ostream& out, const DistanceMatrix& d);
DistanceMatrix read_distance_csv(std::istream& in);

struct CategoryReportEntry {
  std::string community;
  MembershipSplit split;
  CommunityScores scores;
};
nlohmann::json category_report(const std::vector<CategoryReportEntry>& entries, bool with_catalog,
                               std::size_t unranked_sessions);

nlohmann::json to_json(const Dendrogram& dendrogram, const std::vector<std::string>& labels);
void write_merge_heights_csv(std::ostream& out, const Dendrogram& dendrogram);

void write_embedding_csv(std::ostream& out, const Embedding2D& e, const std::vector<std::string>& labels);
nlohmann::json embedding_summary(const Embedding2D& e);

void write_truth_csv(std::ostream& out, const std::map<std::string, std::size_t>& truth);
std::map<std::string, std::size_t> read_truth_csv(std::istream& in);
void write_catalog_csv(std::ostream& out, const CategoryCatalog& catalog);

nlohmann::json to_json(const RecoveryReport& report);

}  // namespace sessioncomm::io

#endif  // SESSIONCOMM_IO_HPP
