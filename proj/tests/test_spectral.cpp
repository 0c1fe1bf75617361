#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "adgame/spectral.hpp"

using namespace adgame;

namespace {

LeaderNetwork undirected_path(int n, int leader = 0) {
  return generate(GraphKind::Path, n, leader, Mode::Undirected);
}

}  // namespace

TEST_CASE("grounded_system on hand examples") {
  // path leader-1-2
  const auto path = undirected_path(3);
  const auto sys = grounded_system(path);
  REQUIRE(max_abs_diff(sys.lg, MatD::from_rows({{2, -1}, {-1, 1}})) == 0.0);
  REQUIRE(sys.l12 == std::vector<double>{-1.0, 0.0});
  REQUIRE(sys.follower_order == std::vector<int>{1, 2});

  // star, leader center, 3 leaves
  const auto star = generate(GraphKind::Star, 4, 0, Mode::Undirected);
  REQUIRE(max_abs_diff(grounded_system(star).lg, MatD::identity(3)) == 0.0);

  // directed path leader -> 1 -> 2 -> 3
  const auto dpath = generate(GraphKind::Path, 4, 0, Mode::Directed);
  const auto dsys = grounded_system(dpath);
  REQUIRE(max_abs_diff(dsys.lg,
                       MatD::from_rows({{1, 0, 0}, {-1, 1, 0}, {0, -1, 1}})) == 0.0);
}

TEST_CASE("grounded rows sum to zero against the leader column") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto net = generate(GraphKind::RandomTree, 10, 3, Mode::Undirected, seed);
    const auto sys = grounded_system(net);
    for (int i = 0; i < sys.lg.rows(); ++i) {
      double sum = sys.l12[i];
      for (int j = 0; j < sys.lg.cols(); ++j) sum += sys.lg(i, j);
      REQUIRE(sum == 0.0);
    }
  }
}

TEST_CASE("grounded_system rejects invalid inputs") {
  REQUIRE_THROWS_AS(
      grounded_system(build_network(4, {{0, 1}, {2, 3}}, Mode::Undirected, 0)),
      InvalidInput);
  REQUIRE_THROWS_AS(
      grounded_system(build_network(3, {{2, 1}, {1, 0}}, Mode::Directed, 0)),
      InvalidInput);
}

TEST_CASE("directed grounded Laplacian is unit lower triangular in distance order") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto net = generate(GraphKind::RandomTree, 9, static_cast<int>(seed % 9),
                              Mode::Directed, seed);
    const auto sys = grounded_system(net);
    for (int i = 0; i < sys.lg.rows(); ++i) {
      REQUIRE(sys.lg(i, i) == 1.0);
      for (int j = i + 1; j < sys.lg.cols(); ++j) REQUIRE(sys.lg(i, j) == 0.0);
    }
  }
}

TEST_CASE("invert_numeric on hand examples") {
  const auto sys = grounded_system(undirected_path(3));
  const auto kernel = invert_numeric(sys);
  REQUIRE(max_abs_diff(kernel.inv, MatD::from_rows({{1, 1}, {1, 2}})) < 1e-12);
  REQUIRE(kernel.method == KernelMethod::Numeric);

  const auto star = generate(GraphKind::Star, 4, 0, Mode::Undirected);
  REQUIRE(max_abs_diff(invert_numeric(grounded_system(star)).inv, MatD::identity(3)) <
          1e-12);
}

TEST_CASE("numeric inversion residual stays tiny up to n = 200") {
  const auto net = generate(GraphKind::RandomTree, 200, 7, Mode::Undirected, 42);
  const auto sys = grounded_system(net);
  const auto kernel = invert_numeric(sys);
  REQUIRE(max_abs_diff(sys.lg * kernel.inv, MatD::identity(199)) <= 1e-9);
}

TEST_CASE("closed_form_undirected on hand examples") {
  const auto path = undirected_path(5);
  const auto k = closed_form_undirected(path);
  REQUIRE(max_abs_diff(k.inv, MatD::from_rows({{1, 1, 1, 1},
                                               {1, 2, 2, 2},
                                               {1, 2, 3, 3},
                                               {1, 2, 3, 4}})) == 0.0);

  const auto star = generate(GraphKind::Star, 5, 0, Mode::Undirected);
  REQUIRE(max_abs_diff(closed_form_undirected(star).inv, MatD::identity(4)) == 0.0);

  const auto cycle = build_network(3, {{0, 1}, {1, 2}, {2, 0}}, Mode::Undirected, 0);
  REQUIRE_THROWS_AS(closed_form_undirected(cycle), InvalidInput);
  REQUIRE_THROWS_AS(closed_form_undirected(generate(GraphKind::Path, 4, 0, Mode::Directed)),
                    InvalidInput);
}

TEST_CASE("closed form equals numeric inversion on random undirected trees") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + static_cast<int>(rng.below(13));
    const int leader = static_cast<int>(rng.below(n));
    const auto net = generate(GraphKind::RandomTree, n, leader, Mode::Undirected, rng.next());
    const auto closed = closed_form_undirected(net);
    const auto numeric = invert_numeric(grounded_system(net));
    REQUIRE(closed.follower_order == numeric.follower_order);
    REQUIRE(max_abs_diff(closed.inv, numeric.inv) <= 1e-9);

    // integer entries; diagonal equals leader distance
    const auto dist = leader_distances(net);
    for (int i = 0; i < closed.size(); ++i) {
      REQUIRE(closed.inv(i, i) == static_cast<double>(dist[closed.follower_order[i]]));
      for (int j = 0; j < closed.size(); ++j)
        REQUIRE(closed.inv(i, j) == std::floor(closed.inv(i, j)));
    }
  }
}

TEST_CASE("leader-adjacent column is the subtree indicator") {
  SplitMix64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + static_cast<int>(rng.below(8));
    const auto net = generate(GraphKind::RandomTree, n, 0, Mode::Undirected, rng.next());
    const auto k = closed_form_undirected(net);
    for (int j = 0; j < k.size(); ++j) {
      const int node_j = k.follower_order[j];
      const bool adjacent =
          std::find(net.undirected_adj[net.leader].begin(),
                    net.undirected_adj[net.leader].end(),
                    node_j) != net.undirected_adj[net.leader].end();
      if (!adjacent) continue;
      for (int i = 0; i < k.size(); ++i) {
        const auto pi = path_to_leader(net, k.follower_order[i]).nodes;
        const bool in_subtree =
            std::find(pi.begin(), pi.end(), node_j) != pi.end();
        REQUIRE(k.inv(i, j) == (in_subtree ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("closed_form_directed on hand examples") {
  const auto dpath = generate(GraphKind::Path, 4, 0, Mode::Directed);
  const auto k = closed_form_directed(dpath);
  REQUIRE(max_abs_diff(k.inv, MatD::from_rows({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}})) == 0.0);

  const auto dstar = generate(GraphKind::Star, 4, 0, Mode::Directed);
  REQUIRE(max_abs_diff(closed_form_directed(dstar).inv, MatD::identity(3)) == 0.0);
}

TEST_CASE("directed closed form equals numeric and is binary") {
  SplitMix64 rng(77);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + static_cast<int>(rng.below(13));
    const int leader = static_cast<int>(rng.below(n));
    const auto net = generate(GraphKind::RandomTree, n, leader, Mode::Directed, rng.next());
    const auto closed = closed_form_directed(net);
    const auto numeric = invert_numeric(grounded_system(net));
    REQUIRE(closed.follower_order == numeric.follower_order);
    REQUIRE(max_abs_diff(closed.inv, numeric.inv) <= 1e-9);
    for (int i = 0; i < closed.size(); ++i) {
      REQUIRE(closed.inv(i, i) == 1.0);
      for (int j = 0; j < closed.size(); ++j)
        REQUIRE((closed.inv(i, j) == 0.0 || closed.inv(i, j) == 1.0));
    }
  }
}

TEST_CASE("directed kernels are dominated by their undirected counterparts") {
  SplitMix64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const int leader = static_cast<int>(rng.below(n));
    const auto dnet = generate(GraphKind::RandomTree, n, leader, Mode::Directed, rng.next());
    const auto dk = closed_form_directed(dnet);
    const auto uk = closed_form_undirected(to_undirected(dnet));
    // align orderings: directed kernels use distance order
    for (int i = 0; i < dk.size(); ++i)
      for (int j = 0; j < dk.size(); ++j) {
        const int ui = uk.index_of(dk.follower_order[i]);
        const int uj = uk.index_of(dk.follower_order[j]);
        REQUIRE(dk.inv(i, j) <= uk.inv(ui, uj));
      }
  }
}

TEST_CASE("factorization identity links directed trees to undirected ones") {
  const auto dpath = generate(GraphKind::Path, 4, 0, Mode::Directed);
  REQUIRE(factorization_check(dpath) == 0.0);
  REQUIRE(factorization_check(generate(GraphKind::Star, 4, 0, Mode::Directed)) == 0.0);

  SplitMix64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const int n = 3 + static_cast<int>(rng.below(48));
    const int leader = static_cast<int>(rng.below(n));
    const auto net = generate(GraphKind::RandomTree, n, leader, Mode::Directed, rng.next());
    REQUIRE(factorization_check(net) <= 1e-12);
  }
  REQUIRE_THROWS_AS(factorization_check(undirected_path(3)), InvalidInput);
}

TEST_CASE("two_tree_count hand examples") {
  const auto path = undirected_path(3);
  REQUIRE(two_tree_count(path, 2, 2) == 2);
  REQUIRE(two_tree_count(path, 1, 1) == 1);
  REQUIRE(two_tree_count(path, 1, 2) == 1);

  const auto star = generate(GraphKind::Star, 5, 0, Mode::Undirected);
  REQUIRE(two_tree_count(star, 1, 2) == 0);
  REQUIRE(two_tree_count(star, 3, 3) == 1);

  REQUIRE_THROWS_AS(two_tree_count(path, 0, 1), InvalidInput);
}

TEST_CASE("two-tree counting agrees with the closed form") {
  SplitMix64 rng(404);
  for (int t = 0; t < 10; ++t) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const int leader = static_cast<int>(rng.below(n));
    const auto net = generate(GraphKind::RandomTree, n, leader, Mode::Undirected, rng.next());
    const auto k = closed_form_undirected(net);
    for (int i = 0; i < k.size(); ++i)
      for (int j = 0; j < k.size(); ++j)
        REQUIRE(static_cast<double>(two_tree_count(net, k.follower_order[i],
                                                   k.follower_order[j])) == k.inv(i, j));
  }
}

TEST_CASE("kernel index lookup") {
  const auto k = closed_form_undirected(undirected_path(4, 1));
  REQUIRE(k.follower_order == std::vector<int>{0, 2, 3});
  REQUIRE(k.index_of(3) == 2);
  REQUIRE_THROWS_AS(k.index_of(1), InvalidInput);
}
