#ifndef SESSIONCOMM_PIPELINE_HPP
#define SESSIONCOMM_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sessioncomm/analysis.hpp"
#include "sessioncomm/synth.hpp"

namespace sessioncomm {

/// An upstream stage artifact is missing (exit code 2).
class MissingArtifact : public std::runtime_error {
 public:
  explicit MissingArtifact(const std::filesystem::path& path);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// A setting is invalid (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct PipelineConfig {
  std::string input;
  std::string format = "csv";
  bool strict = false;
  std::int64_t threshold = 1800;
  std::string filter;
  double popular_fraction = 1.0;

  std::size_t k = 10;
  double tolerance = 1e-10;
  std::size_t max_iterations = 10'000;
  std::uint64_t seed = 0;
  bool split_poles = false;

  std::string split = "half";
  std::string catalog;

  std::size_t sammon_iterations = 500;
  double magic_factor = 0.3;
  double sammon_tolerance = 1e-9;

  std::string truth;
  std::size_t recovery_top = 0;  // 0: sessions per planted group

  std::filesystem::path out = "sessioncomm_out";
  int threads = 0;
};

// Artifact names inside the output directory.
namespace artifact {
inline constexpr const char* sessions = "sessions.jsonl";
inline constexpr const char* rejects = "rejects.csv";
inline constexpr const char* edges = "edges.csv";
inline constexpr const char* graph_stats = "graph_stats.json";
inline constexpr const char* spectrum = "spectrum.json";
inline constexpr const char* ranks_dir = "ranks";
inline constexpr const char* distances = "distances.csv";
inline constexpr const char* categories = "categories.json";
inline constexpr const char* dendrogram = "dendrogram.json";
inline constexpr const char* merge_heights = "merge_heights.csv";
inline constexpr const char* embedding = "embedding.csv";
inline constexpr const char* embedding_meta = "embedding.json";
inline constexpr const char* recovery = "recovery.json";
inline constexpr const char* report_dir = "report";
inline constexpr const char* manifest = "manifest.json";
}  // namespace artifact

namespace stages {

void sessionize(const PipelineConfig& cfg, std::ostream& log);
void graph(const PipelineConfig& cfg, std::ostream& log);
void communities(const PipelineConfig& cfg, std::ostream& log);
void distances(const PipelineConfig& cfg, std::ostream& log);
void labels(const PipelineConfig& cfg, std::ostream& log);
void cluster(const PipelineConfig& cfg, std::ostream& log);
void project(const PipelineConfig& cfg, std::ostream& log);
void report(const PipelineConfig& cfg, std::ostream& log);
void pipeline(const PipelineConfig& cfg, std::ostream& log);
/// Writes log.csv, truth.csv and catalog.csv into `out`.
void synth(const PlantedConfig& planted, const std::filesystem::path& out, std::ostream& log);

}  // namespace stages

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Runs one subcommand. Returns 0 on success, 1 for usage or config errors,
/// 2 for a missing upstream artifact, 3 for any other failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace sessioncomm

#endif  // SESSIONCOMM_PIPELINE_HPP
