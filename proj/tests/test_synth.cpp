#include <doctest.h>

#include <set>
#include <sstream>

#include "sessioncomm/graph.hpp"
#include "sessioncomm/io.hpp"
#include "sessioncomm/synth.hpp"

using namespace sessioncomm;

TEST_CASE("generator is deterministic per seed") {
  PlantedConfig cfg;
  cfg.seed = 12;
  auto a = generate_planted_log(cfg);
  auto b = generate_planted_log(cfg);
  CHECK(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].timestamp == b.records[i].timestamp);
    CHECK(a.records[i].object_id == b.records[i].object_id);
  }
  cfg.seed = 13;
  auto c = generate_planted_log(cfg);
  bool differs = c.records.size() != a.records.size();
  for (std::size_t i = 0; !differs && i < a.records.size(); ++i) differs = a.records[i].object_id != c.records[i].object_id;
  CHECK(differs);
}

TEST_CASE("one session per planted user with access counts in range") {
  PlantedConfig cfg;
  cfg.seed = 2;
  auto log = generate_planted_log(cfg);
  auto sessions = sessionize(log.records, {cfg.inactivity_threshold});
  CHECK(sessions.size() == cfg.groups * cfg.sessions_per_group);
  CHECK(log.truth.size() == sessions.size());
  std::vector<std::size_t> per_group(cfg.groups, 0);
  for (const auto& [user, g] : log.truth) ++per_group.at(g);
  for (auto n : per_group) CHECK(n == cfg.sessions_per_group);
  for (const auto& s : sessions) {
    CHECK(s.requests.size() >= cfg.min_accesses);
    CHECK(s.requests.size() <= cfg.max_accesses);
  }
  for (std::size_t i = 1; i < log.records.size(); ++i) CHECK(log.records[i - 1].timestamp <= log.records[i].timestamp);
}

TEST_CASE("noise-free planting yields one component per group") {
  PlantedConfig cfg;
  cfg.cross_group_noise = 0.0;
  cfg.seed = 8;
  auto log = generate_planted_log(cfg);
  auto sessions = sessionize(log.records, {cfg.inactivity_threshold});
  CHECK(graph_stats(build_similarity(sessions)).components == cfg.groups);

  cfg.groups = 1;
  auto single = generate_planted_log(cfg);
  for (const auto& [user, g] : single.truth) CHECK(g == 0);
}

TEST_CASE("records round-trip through csv") {
  PlantedConfig cfg;
  cfg.sessions_per_group = 5;
  auto log = generate_planted_log(cfg);
  std::stringstream csv;
  io::write_records_csv(csv, log.records);
  auto parsed = parse_log(csv, LogFormat::csv, ParseMode::strict);
  REQUIRE(parsed.records.size() == log.records.size());
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    CHECK(parsed.records[i].timestamp == log.records[i].timestamp);
    CHECK(parsed.records[i].user_id == log.records[i].user_id);
    CHECK(parsed.records[i].object_id == log.records[i].object_id);
  }
}

TEST_CASE("catalog names every pool object") {
  PlantedConfig cfg;
  cfg.groups = 2;
  cfg.objects_per_group = 3;
  auto catalog = planted_catalog(cfg);
  CHECK(catalog.size() == 6);
  CHECK(catalog.at(planted_object_id(1, 2)) == std::set<std::string>{"group_1"});
}

TEST_CASE("invalid configurations are rejected") {
  PlantedConfig cfg;
  cfg.min_accesses = 20;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.cross_group_noise = 1.5;
  CHECK_THROWS(generate_planted_log(cfg));
  cfg = {};
  cfg.groups = 0;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("planted structure in the spectrum matches the dense oracle") {
  // Symmetric groups: the principal vector mixes every group, the next two
  // are block contrasts whose top sessions each sit in one group.
  PlantedConfig cfg;
  cfg.seed = 7;
  auto log = generate_planted_log(cfg);
  auto sessions = sessionize(log.records, {cfg.inactivity_threshold});
  PowerIterConfig pc;
  pc.k = 3;
  auto spectrum = find_communities(build_similarity(sessions), pc);
  auto report = assess_recovery(spectrum, sessions, log.truth, 3, cfg.sessions_per_group);
  REQUIRE(report.communities.size() == 3);
  CHECK(report.communities[0].purity < 0.9);
  CHECK(report.communities[1].purity >= 0.9);
  CHECK(report.communities[2].purity >= 0.9);
  CHECK(report.communities[1].majority_group != report.communities[2].majority_group);
  CHECK(report.min_purity == report.communities[0].purity);
}
