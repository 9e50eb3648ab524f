#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sessioncomm/spectral.hpp"
#include "sessioncomm/synth.hpp"

using namespace sessioncomm;

namespace {

double norm(const std::vector<double>& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Oracle eigenspace of all eigenvalues within `gap` of `value`.
Eigen::MatrixXd cluster_basis(const oracle::DenseEigen& eig, double value, double gap) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i) - value) <= gap) cols.push_back(i);
  }
  Eigen::MatrixXd b(eig.vectors.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) b.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]);
  return b;
}

}  // namespace

TEST_CASE("authority operator on a 2x2 example") {
  auto g = SessionGraph::from_edges(2, std::vector<Edge>{{0, 1, 1.0}});
  AuthorityOperator op(g);
  std::vector<double> x = {1, 1}, y(2);
  op.apply(x, y);
  CHECK(y == std::vector<double>{0, 1});

  auto zero = SessionGraph::from_edges(3, {});
  AuthorityOperator zop(zero);
  std::vector<double> x3 = {1, 2, 3}, y3(3, 7.0);
  zop.apply(x3, y3);
  CHECK(y3 == std::vector<double>{0, 0, 0});
}

TEST_CASE("authority operator matches the dense product") {
  std::mt19937_64 rng(3);
  auto sessions = oracle::random_sessions(rng, 10, 8, 4);
  auto g = build_similarity(sessions);
  Eigen::MatrixXd s = oracle::dense_adjacency(g);
  Eigen::MatrixXd sts = s.transpose() * s;
  Eigen::MatrixXd sst = s * s.transpose();
  std::normal_distribution<double> normal;
  std::vector<double> x(10), y(10), z(10);
  for (auto& v : x) v = normal(rng);
  AuthorityOperator(g).apply(x, y);
  HubOperator(g).apply(x, z);
  CHECK((to_eigen(y) - sts * to_eigen(x)).norm() <= 1e-12);
  CHECK((to_eigen(z) - sst * to_eigen(x)).norm() <= 1e-12);
}

TEST_CASE("diagonal operator eigenpairs") {
  DenseOperator op(2, {4, 0, 0, 1});
  auto pairs = top_k_eigenpairs(op, 2, {});
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(pairs[1].value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pairs[0].vector[0] == doctest::Approx(1.0));
  CHECK(std::abs(pairs[0].vector[1]) < 1e-9);
  CHECK(pairs[1].vector[1] == doctest::Approx(1.0));
}

TEST_CASE("block diagonal operator: heavier block first") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 12;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> x(6), y(6);
  for (auto& v : x) v = 0.5 + 0.5 * u(rng);
  for (auto& v : y) v = 0.5 + 0.5 * u(rng);
  // Rank-one heavy block, so the second pair must come from the light block.
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      a(i, j) = 2.0 * x[i] * y[j];
      a(i + 6, j + 6) = 0.5 * u(rng);
    }
  }
  Eigen::MatrixXd m = a.transpose() * a;
  std::vector<double> values(m.data(), m.data() + n * n);
  auto pairs = top_k_eigenpairs(DenseOperator(n, values), 2, {});
  auto eig = oracle::symmetric_eigen(m);
  auto heavy = eig.vectors.col(0);
  CHECK(pairs[0].value == doctest::Approx(eig.values(0)).epsilon(1e-10));
  double light_mass = 0, heavy_mass = 0;
  for (std::size_t i = 0; i < 6; ++i) heavy_mass += pairs[0].vector[i] * pairs[0].vector[i];
  for (std::size_t i = 6; i < n; ++i) light_mass += pairs[1].vector[i] * pairs[1].vector[i];
  CHECK(heavy_mass > 1.0 - 1e-12);
  CHECK(light_mass > 1.0 - 1e-12);
  CHECK(oracle::subspace_sin(to_eigen(pairs[0].vector), heavy) <= 1e-6);
}

TEST_CASE("repeated top eigenvalue returns an orthonormal basis of the eigenspace") {
  DenseOperator op(3, {3, 0, 0, 0, 3, 0, 0, 0, 1});
  auto pairs = top_k_eigenpairs(op, 2, {});
  CHECK(pairs[0].value == doctest::Approx(3.0));
  CHECK(pairs[1].value == doctest::Approx(3.0));
  const double cross = std::inner_product(pairs[0].vector.begin(), pairs[0].vector.end(), pairs[1].vector.begin(), 0.0);
  CHECK(std::abs(cross) < 1e-12);
  for (const auto& p : pairs) {
    CHECK(std::abs(p.vector[2]) < 1e-9);  // inside span(e0, e1)
    std::vector<double> mv(3);
    op.apply(p.vector, mv);
    for (std::size_t i = 0; i < 3; ++i) mv[i] -= p.value * p.vector[i];
    CHECK(norm(mv) <= 1e-10 * 3);
  }
}

TEST_CASE("non-convergence names the pair") {
  const std::size_t n = 40;
  std::vector<double> diag(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i * n + i] = 1.0 - 1e-4 * static_cast<double>(i);
  DenseOperator op(n, diag);
  PowerIterConfig cfg;
  cfg.max_iterations = 5;
  try {
    top_k_eigenpairs(op, 1, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.pair_index() == 0);
    CHECK(e.residual() > 0.0);
  }
  CHECK_THROWS_AS(top_k_eigenpairs(op, n + 1, {}), std::invalid_argument);
}

TEST_CASE("sign convention: largest entry positive") {
  std::vector<double> v = {0.1, -0.9, 0.3};
  CHECK(normalize_sign(v));
  CHECK(v[1] == 0.9);
  CHECK_FALSE(normalize_sign(v));
}

TEST_CASE("identical sessions share a community with equal weight") {
  std::vector<Session> sessions;
  for (std::size_t i = 0; i < 3; ++i) {
    sessions.push_back(make_session(i, "u" + std::to_string(i), {{0, "a"}, {1, "b"}}));
  }
  auto g = build_similarity(sessions);
  PowerIterConfig cfg;
  cfg.k = 1;
  auto spec = find_communities(g, cfg);
  REQUIRE(spec.communities.size() == 1);
  const auto& a = spec.communities[0].authority;
  CHECK(a[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(a[1] == doctest::Approx(a[0]).epsilon(1e-9));
  CHECK(a[2] == doctest::Approx(a[0]).epsilon(1e-9));
  CHECK(spec.communities[0].eigenvalue == doctest::Approx(4.0));
}

TEST_CASE("isolated sessions get zero authority") {
  auto g = SessionGraph::from_edges(5, std::vector<Edge>{{0, 1, 1.0}, {1, 0, 0.5}, {2, 3, 0.5}, {3, 2, 1.0}});
  PowerIterConfig cfg;
  cfg.k = 2;
  auto spec = find_communities(g, cfg);
  for (const auto& c : spec.communities) CHECK(c.authority[4] == 0.0);
}

TEST_CASE("spectrum invariants, mutual reinforcement and oracle agreement on random graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng() % 18;
    auto sessions = oracle::random_sessions(rng, n, 4 + rng() % 20, 1 + rng() % 5);
    auto g = build_similarity(sessions);
    PowerIterConfig cfg;
    cfg.k = std::min<std::size_t>(n, 4);
    cfg.seed = static_cast<std::uint64_t>(trial);
    auto spec = find_communities(g, cfg);
    Eigen::MatrixXd s = oracle::dense_adjacency(g);
    auto eig = oracle::symmetric_eigen(s.transpose() * s);

    for (std::size_t i = 0; i < spec.communities.size(); ++i) {
      const auto& c = spec.communities[i];
      CHECK(norm(c.authority) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(norm(c.hub) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(c.eigenvalue >= 0.0);
      CHECK(std::abs(c.eigenvalue - eig.values(static_cast<Eigen::Index>(i))) <= 1e-8);
      if (i > 0) CHECK(c.eigenvalue <= spec.communities[i - 1].eigenvalue);
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(std::abs(to_eigen(c.authority).dot(to_eigen(spec.communities[j].authority))) <= 1e-6);
      }
      auto max_it = std::max_element(c.authority.begin(), c.authority.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
      CHECK(*max_it > 0.0);

      if (c.eigenvalue > 1e-3 * spec.communities[0].eigenvalue) {
        // a ~ S^T h and h ~ S a
        Eigen::VectorXd a = to_eigen(c.authority), h = to_eigen(c.hub);
        Eigen::VectorXd sta = s.transpose() * h;
        CHECK((sta / sta.norm() - a).norm() <= 1e-6);
        Eigen::VectorXd sa = s * a;
        CHECK((sa / sa.norm() - h).norm() <= 1e-12);
        const double gap = 1e-6 * std::max(1.0, eig.values(0));
        CHECK(oracle::subspace_sin(a, cluster_basis(eig, c.eigenvalue, gap)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("scaling weights scales eigenvalues quadratically and keeps rankings") {
  std::mt19937_64 rng(77);
  auto sessions = oracle::random_sessions(rng, 15, 12, 4);
  auto g = build_similarity(sessions);
  PowerIterConfig cfg;
  cfg.k = 3;
  auto base = find_communities(g, cfg);
  auto scaled = find_communities(g.scaled(3.0), cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(scaled.communities[i].eigenvalue == doctest::Approx(9.0 * base.communities[i].eigenvalue).epsilon(1e-9));
  }
  for (std::size_t i = 0; i < base.n; ++i) {
    CHECK(std::abs(scaled.communities[0].authority[i] - base.communities[0].authority[i]) <= 1e-8);
  }
}

TEST_CASE("determinism: identical inputs give bit-identical spectra") {
  std::mt19937_64 rng(5);
  auto sessions = oracle::random_sessions(rng, 40, 30, 6);
  auto g = build_similarity(sessions);
  PowerIterConfig cfg;
  cfg.k = 5;
  auto a = find_communities(g, cfg);
  auto b = find_communities(g, cfg);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a.communities[i].authority == b.communities[i].authority);
    CHECK(a.communities[i].hub == b.communities[i].hub);
    CHECK(a.communities[i].eigenvalue == b.communities[i].eigenvalue);
  }
}

TEST_CASE("rank-deficient graphs still get unit, orthogonal hubs") {
  // two sessions, one edge: S has rank 1
  auto g = SessionGraph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}});
  PowerIterConfig cfg;
  cfg.k = 3;
  auto spec = find_communities(g, cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(norm(spec.communities[i].hub) == doctest::Approx(1.0));
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(std::abs(to_eigen(spec.communities[i].hub).dot(to_eigen(spec.communities[j].hub))) <= 1e-6);
    }
  }
  CHECK(spec.communities[1].eigenvalue == doctest::Approx(0.0));
}

TEST_CASE("split poles doubles non-principal communities") {
  std::mt19937_64 rng(8);
  auto g = build_similarity(oracle::random_sessions(rng, 12, 10, 4));
  PowerIterConfig cfg;
  cfg.k = 3;
  auto split = split_poles(find_communities(g, cfg));
  REQUIRE(split.communities.size() == 5);
  CHECK(split.communities[0].pole.empty());
  CHECK(split.communities[1].pole == "+");
  CHECK(split.communities[2].pole == "-");
  CHECK(split.communities[2].authority[0] == -split.communities[1].authority[0]);
}

TEST_CASE("find_communities preconditions") {
  CHECK_THROWS(find_communities(SessionGraph::from_edges(0, {}), {}));
  PowerIterConfig cfg;
  cfg.k = 4;
  CHECK_THROWS(find_communities(SessionGraph::from_edges(3, {}), cfg));
}
