#ifndef SESSIONCOMM_SYNTH_HPP
#define SESSIONCOMM_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sessioncomm/evaluate.hpp"
#include "sessioncomm/log_ingest.hpp"
#include "sessioncomm/spectral.hpp"

namespace sessioncomm {

struct PlantedConfig {
  std::size_t groups = 3;
  std::size_t sessions_per_group = 50;
  std::size_t objects_per_group = 40;
  std::size_t min_accesses = 5;
  std::size_t max_accesses = 15;
  double cross_group_noise = 0.1;
  std::uint64_t seed = 0;
  /// Generated users are spaced further apart than this.
  std::int64_t inactivity_threshold = 1800;

  void validate() const;
};

struct PlantedLog {
  std::vector<AccessRecord> records;  // chronological
  std::map<std::string, std::size_t> truth;  // user_id -> group
};

/// One session per user. Each request picks the user's own group pool with
/// probability 1 - noise and a uniformly chosen other pool otherwise.
PlantedLog generate_planted_log(const PlantedConfig& config);

/// Object -> "group_<g>" catalog matching the generator's pools.
CategoryCatalog planted_catalog(const PlantedConfig& config);

std::string planted_object_id(std::size_t group, std::size_t object);

struct CommunityRecovery {
  std::size_t community = 0;
  std::size_t majority_group = 0;
  double purity = 0.0;  // fraction of the top sessions in majority_group
};

struct RecoveryReport {
  std::size_t top = 0;
  std::vector<CommunityRecovery> communities;
  bool distinct_groups = false;
  double min_purity = 0.0;
};

/// For each of the first `communities` communities, the planted-group purity
/// of its `top` highest-ranked sessions.
RecoveryReport assess_recovery(const CommunitySpectrum& spectrum, std::span<const Session> sessions,
                               const std::map<std::string, std::size_t>& truth, std::size_t communities,
                               std::size_t top);

}  // namespace sessioncomm

#endif  // SESSIONCOMM_SYNTH_HPP
