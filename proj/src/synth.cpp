#include "sessioncomm/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace sessioncomm {

void PlantedConfig::validate() const {
  if (groups == 0) throw std::invalid_argument("groups must be positive");
  if (sessions_per_group == 0) throw std::invalid_argument("sessions_per_group must be positive");
  if (objects_per_group == 0) throw std::invalid_argument("objects_per_group must be positive");
  if (min_accesses == 0 || max_accesses < min_accesses) {
    throw std::invalid_argument("accesses range must satisfy 0 < min_accesses <= max_accesses");
  }
  if (!(cross_group_noise >= 0.0 && cross_group_noise < 0.5)) {
    throw std::invalid_argument("cross_group_noise must be in [0, 0.5)");
  }
  if (inactivity_threshold <= 1) throw std::invalid_argument("inactivity_threshold must exceed 1");
}

std::string planted_object_id(std::size_t group, std::size_t object) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "g%zu_o%04zu", group, object);
  return buf;
}

PlantedLog generate_planted_log(const PlantedConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  const std::size_t users = config.groups * config.sessions_per_group;

  std::vector<std::size_t> group_of(users);
  for (std::size_t u = 0; u < users; ++u) group_of[u] = u % config.groups;
  std::shuffle(group_of.begin(), group_of.end(), rng);

  const std::int64_t max_gap = std::min<std::int64_t>(120, config.inactivity_threshold - 1);
  std::uniform_int_distribution<std::int64_t> gap(1, max_gap);
  std::uniform_int_distribution<std::size_t> length(config.min_accesses, config.max_accesses);
  std::uniform_int_distribution<std::size_t> pick_object(0, config.objects_per_group - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  // Spacing guarantees a gap above the threshold between consecutive users.
  const std::int64_t spacing =
      config.inactivity_threshold + 1 + static_cast<std::int64_t>(config.max_accesses) * max_gap;

  PlantedLog out;
  for (std::size_t u = 0; u < users; ++u) {
    char name[32];
    std::snprintf(name, sizeof name, "user%05zu", u);
    const std::size_t group = group_of[u];
    out.truth[name] = group;

    std::int64_t t = static_cast<std::int64_t>(u) * spacing;
    const std::size_t n = length(rng);
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t pool = group;
      if (config.groups > 1 && coin(rng) < config.cross_group_noise) {
        std::uniform_int_distribution<std::size_t> other(0, config.groups - 2);
        pool = other(rng);
        if (pool >= group) ++pool;
      }
      out.records.push_back({t, name, planted_object_id(pool, pick_object(rng))});
      t += gap(rng);
    }
  }
  return out;
}

CategoryCatalog planted_catalog(const PlantedConfig& config) {
  CategoryCatalog catalog;
  for (std::size_t g = 0; g < config.groups; ++g) {
    for (std::size_t o = 0; o < config.objects_per_group; ++o) {
      catalog[planted_object_id(g, o)].insert("group_" + std::to_string(g));
    }
  }
  return catalog;
}

RecoveryReport assess_recovery(const CommunitySpectrum& spectrum, std::span<const Session> sessions,
                               const std::map<std::string, std::size_t>& truth, std::size_t communities,
                               std::size_t top) {
  if (communities > spectrum.communities.size()) throw std::invalid_argument("not enough communities");
  if (top == 0 || top > sessions.size()) throw std::invalid_argument("top must be in [1, sessions]");
  RecoveryReport report;
  report.top = top;
  report.min_purity = communities == 0 ? 0.0 : 1.0;
  std::set<std::size_t> groups;
  for (std::size_t c = 0; c < communities; ++c) {
    auto ranking = rank_sessions(spectrum.communities[c]);
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t i = 0; i < top; ++i) {
      auto it = truth.find(sessions[ranking.order[i]].user_id);
      if (it == truth.end()) throw std::invalid_argument("user missing from ground truth");
      ++counts[it->second];
    }
    auto best = std::max_element(counts.begin(), counts.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    CommunityRecovery rec{c, best->first, static_cast<double>(best->second) / static_cast<double>(top)};
    groups.insert(rec.majority_group);
    report.min_purity = std::min(report.min_purity, rec.purity);
    report.communities.push_back(rec);
  }
  report.distinct_groups = groups.size() == communities;
  return report;
}

}  // namespace sessioncomm
