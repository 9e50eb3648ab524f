#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sessioncomm/analysis.hpp"

using namespace sessioncomm;

namespace {

DistanceMatrix random_matrix(std::mt19937_64& rng, std::size_t k, bool ties) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::uniform_int_distribution<int> few(1, 4);
  std::vector<double> v(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) v[i * k + j] = v[j * k + i] = ties ? few(rng) * 0.5 : u(rng);
  }
  return DistanceMatrix::from_values(k, std::move(v));
}

DistanceMatrix triangle_345() {
  return DistanceMatrix::from_values(3, {0, 3, 4, 3, 0, 5, 4, 5, 0});
}

}  // namespace

TEST_CASE("complete linkage three-point trace") {
  auto d = DistanceMatrix::from_values(3, {0, 1, 5, 1, 0, 4, 5, 4, 0});
  auto dendro = complete_linkage(d);
  REQUIRE(dendro.merges.size() == 2);
  CHECK(dendro.merges[0].cluster_a == std::vector<std::size_t>{0});
  CHECK(dendro.merges[0].cluster_b == std::vector<std::size_t>{1});
  CHECK(dendro.merges[0].height == 1.0);
  CHECK(dendro.merges[1].cluster_a == std::vector<std::size_t>{0, 1});
  CHECK(dendro.merges[1].cluster_b == std::vector<std::size_t>{2});
  CHECK(merge_heights(dendro) == std::vector<double>{1, 5});
}

TEST_CASE("equal distances merge at constant height in index order") {
  auto d = DistanceMatrix::from_values(4, {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0});
  auto dendro = complete_linkage(d);
  CHECK(merge_heights(dendro) == std::vector<double>{1, 1, 1});
  CHECK(dendro.merges[0].cluster_b == std::vector<std::size_t>{1});
  CHECK(dendro.merges[1].cluster_a == std::vector<std::size_t>{0, 1});
  CHECK(dendro.merges[1].cluster_b == std::vector<std::size_t>{2});
}

TEST_CASE("two communities merge once") {
  auto d = DistanceMatrix::from_values(2, {0, 0.7, 0.7, 0});
  CHECK(merge_heights(complete_linkage(d)) == std::vector<double>{0.7});
  CHECK_THROWS(complete_linkage(DistanceMatrix::from_values(1, {0})));
  CHECK_THROWS(complete_linkage(DistanceMatrix::from_values(2, {0, 1, 2, 0})));
}

TEST_CASE("property: linkage matches brute force, is monotone and dominates input distances") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng() % 7;
    auto d = random_matrix(rng, k, trial % 2 == 0);
    auto dendro = complete_linkage(d);
    auto heights = merge_heights(dendro);
    CHECK(heights == oracle::brute_linkage_heights(d.values, k));
    CHECK(std::is_sorted(heights.begin(), heights.end()));
    auto coph = cophenetic(dendro);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) CHECK(coph(a, b) >= d(a, b));
    }
  }
}

TEST_CASE("property: relabelling communities permutes the linkage heights consistently") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 3 + rng() % 5;
    auto d = random_matrix(rng, k, false);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pv(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) pv[perm[i] * k + perm[j]] = d(i, j);
    }
    auto permuted = DistanceMatrix::from_values(k, pv);
    CHECK(merge_heights(complete_linkage(permuted)) == merge_heights(complete_linkage(d)));
  }
}

TEST_CASE("sammon recovers a planar 3-4-5 triangle") {
  auto e = sammon(triangle_345());
  CHECK(e.stress <= 1e-6);
  CHECK(e.iterations <= 500);
  CHECK(e.points.size() == 3);
  const double d01 = std::hypot(e.points[0][0] - e.points[1][0], e.points[0][1] - e.points[1][1]);
  CHECK(d01 == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("sammon stress never increases across accepted steps") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 3 + rng() % 8;
    auto d = random_matrix(rng, k, false);
    SammonConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    auto e = sammon(d, cfg);
    CHECK(e.stress >= 0.0);
    for (std::size_t i = 1; i < e.stress_history.size(); ++i) {
      CHECK(e.stress_history[i] <= e.stress_history[i - 1]);
    }
    CHECK(e.stress == doctest::Approx(sammon_stress(d, e.points)).epsilon(1e-12));
  }
}

TEST_CASE("regular tetrahedron metric is not planar") {
  auto d = DistanceMatrix::from_values(4, {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0});
  double best = INFINITY;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SammonConfig cfg;
    cfg.seed = seed;
    best = std::min(best, sammon(d, cfg).stress);
  }
  const double oracle_min = oracle::sammon_restart_minimum(d.values, 4, 20, 1);
  CHECK(oracle_min > 1e-3);
  CHECK(best > 0.0);
  CHECK(best >= oracle_min - 1e-6);
  CHECK(best <= oracle_min + 1e-3);
}

TEST_CASE("stress is invariant to rotating and translating the layout") {
  std::mt19937_64 rng(21);
  auto d = random_matrix(rng, 6, false);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SammonConfig cfg;
    cfg.seed = seed;
    auto e = sammon(d, cfg);
    const double angle = 0.7 + static_cast<double>(seed);
    std::vector<Point2> moved(e.points.size());
    for (std::size_t i = 0; i < moved.size(); ++i) {
      moved[i] = {std::cos(angle) * e.points[i][0] - std::sin(angle) * e.points[i][1] + 5.0,
                  std::sin(angle) * e.points[i][0] + std::cos(angle) * e.points[i][1] - 2.0};
    }
    CHECK(sammon_stress(d, moved) == doctest::Approx(e.stress).epsilon(1e-9));
    CHECK(embedding_spread(moved) == doctest::Approx(embedding_spread(e.points)).epsilon(1e-9));
  }
}

TEST_CASE("zero distances are perturbed, bad input rejected") {
  auto d = DistanceMatrix::from_values(3, {0, 0, 1, 0, 0, 1, 1, 1, 0});
  auto e = sammon(d);
  CHECK(e.perturbed_pairs == 1);
  CHECK(std::isfinite(e.stress));
  CHECK_THROWS(sammon(DistanceMatrix::from_values(2, {0, 1, 1, 0})));
  CHECK_THROWS(sammon(DistanceMatrix::from_values(3, {0, -1, 1, -1, 0, 1, 1, 1, 0})));
}

TEST_CASE("embedding spread") {
  std::vector<Point2> pts = {{0, 0}, {3, 4}};
  CHECK(embedding_spread(pts) == 5.0);
}
