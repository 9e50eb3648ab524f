#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sessioncomm/csv.hpp"
#include "sessioncomm/io.hpp"

using namespace sessioncomm;

TEST_CASE("csv field splitting") {
  auto f = csv::split_line("a,\"b,c\",\"d\"\"e\",");
  REQUIRE(f.has_value());
  CHECK(*f == std::vector<std::string>{"a", "b,c", "d\"e", ""});
  CHECK_FALSE(csv::split_line("\"open").has_value());
  CHECK(csv::escape("x,y") == "\"x,y\"");
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::format_double(0.1) == "0.1");
}

TEST_CASE("sessions round-trip through jsonl") {
  std::mt19937_64 rng(1);
  auto sessions = oracle::random_sessions(rng, 25, 10, 5);
  std::stringstream buf;
  io::write_sessions_jsonl(buf, sessions);
  auto back = io::read_sessions_jsonl(buf);
  REQUIRE(back.size() == sessions.size());
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    CHECK(back[i].session_id == sessions[i].session_id);
    CHECK(back[i].user_id == sessions[i].user_id);
    CHECK(back[i].object_counts == sessions[i].object_counts);
  }
  std::istringstream gap(R"({"session_id":1,"user_id":"u","requests":[{"timestamp":0,"object_id":"a"}]})");
  CHECK_THROWS_AS(io::read_sessions_jsonl(gap), io::FormatError);
}

TEST_CASE("edge list round-trips exactly") {
  std::mt19937_64 rng(2);
  auto sessions = oracle::random_sessions(rng, 40, 15, 6);
  auto g = build_similarity(sessions);
  std::stringstream buf;
  io::write_edge_list(buf, g);
  auto back = SessionGraph::from_edges(g.size(), io::read_edge_list(buf));
  CHECK(back.forward() == g.forward());
  std::istringstream bad("p,q,weight\n0,1,abc\n");
  CHECK_THROWS_AS(io::read_edge_list(bad), io::FormatError);
}

TEST_CASE("spectrum json round-trips exactly") {
  std::mt19937_64 rng(3);
  auto sessions = oracle::random_sessions(rng, 20, 12, 5);
  PowerIterConfig cfg;
  cfg.k = 3;
  cfg.split_poles = true;
  auto spec = find_communities(build_similarity(sessions), cfg);
  auto back = io::spectrum_from_json(nlohmann::json::parse(io::to_json(spec).dump()));
  REQUIRE(back.communities.size() == spec.communities.size());
  CHECK(back.n == spec.n);
  for (std::size_t i = 0; i < spec.communities.size(); ++i) {
    CHECK(back.communities[i].authority == spec.communities[i].authority);
    CHECK(back.communities[i].hub == spec.communities[i].hub);
    CHECK(back.communities[i].eigenvalue == spec.communities[i].eigenvalue);
    CHECK(back.communities[i].pole == spec.communities[i].pole);
  }
  CHECK(back.config.k == cfg.k);
  CHECK(back.config.split_poles);
}

TEST_CASE("distance csv round-trips with labels") {
  auto d = DistanceMatrix::from_values(3, {0, 0.25, 1.5, 0.25, 0, 2, 1.5, 2, 0});
  d.labels = {"C1", "C2+", "C2-"};
  std::stringstream buf;
  io::write_distance_csv(buf, d);
  auto back = io::read_distance_csv(buf);
  CHECK(back.values == d.values);
  CHECK(back.labels == d.labels);
}

TEST_CASE("truth csv round-trips") {
  std::map<std::string, std::size_t> truth = {{"user00001", 2}, {"user00002", 0}};
  std::stringstream buf;
  io::write_truth_csv(buf, truth);
  CHECK(io::read_truth_csv(buf) == truth);
}

TEST_CASE("dendrogram json lists merges in order") {
  auto d = DistanceMatrix::from_values(3, {0, 1, 5, 1, 0, 4, 5, 4, 0});
  auto j = io::to_json(complete_linkage(d), {"C1", "C2", "C3"});
  REQUIRE(j.at("merges").size() == 2);
  CHECK(j.at("merges")[1].at("height").get<double>() == 5.0);
  std::ostringstream heights;
  io::write_merge_heights_csv(heights, complete_linkage(d));
  CHECK(heights.str() == "step,height\n1,1\n2,5\n");
}
