#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "adgame/io.hpp"
#include "adgame/topology.hpp"

using namespace adgame;

namespace {

LeaderNetwork random_tree(int n, std::uint64_t seed, Mode mode = Mode::Undirected,
                          int leader = 0) {
  return generate(GraphKind::RandomTree, n, leader, mode, seed);
}

}  // namespace

TEST_CASE("build_network constructs the documented examples") {
  const auto star = build_network(3, {{2, 0}, {2, 1}}, Mode::Undirected, 2);
  REQUIRE(star.degree(2) == 2);
  REQUIRE(star.followers() == std::vector<int>{0, 1});

  const auto path = build_network(4, {{3, 0}, {0, 1}, {1, 2}}, Mode::Undirected, 3);
  REQUIRE(validate_tree(path));
  REQUIRE(path.degree(3) == 1);
}

TEST_CASE("build_network rejects malformed inputs") {
  REQUIRE_THROWS_AS(build_network(3, {{0, 1}, {1, 0}}, Mode::Directed, 0), InvalidInput);
  REQUIRE_THROWS_AS(build_network(3, {{0, 0}}, Mode::Undirected, 0), InvalidInput);
  REQUIRE_THROWS_AS(build_network(3, {{0, 1}, {1, 0}}, Mode::Undirected, 0), InvalidInput);
  REQUIRE_THROWS_AS(build_network(3, {{0, 5}}, Mode::Undirected, 0), InvalidInput);
  REQUIRE_THROWS_AS(build_network(3, {}, Mode::Undirected, 0), InvalidInput);
  REQUIRE_THROWS_AS(build_network(3, {{0, 1}}, Mode::Undirected, 7), InvalidInput);
  REQUIRE_THROWS_AS(build_network(1, {{0, 0}}, Mode::Undirected, 0), InvalidInput);
}

TEST_CASE("validate_tree") {
  REQUIRE(validate_tree(generate(GraphKind::Path, 4, 0, Mode::Undirected)));
  // disconnected: 4 nodes, 2 edges
  REQUIRE_FALSE(validate_tree(build_network(4, {{0, 1}, {2, 3}}, Mode::Undirected, 0)));
  // directed path oriented toward the leader: leader reaches nobody
  REQUIRE_FALSE(validate_tree(build_network(3, {{2, 1}, {1, 0}}, Mode::Directed, 0)));
  // directed path away from the leader is fine
  REQUIRE(validate_tree(build_network(3, {{0, 1}, {1, 2}}, Mode::Directed, 0)));
  // cycle
  REQUIRE_FALSE(validate_tree(build_network(3, {{0, 1}, {1, 2}, {2, 0}}, Mode::Undirected, 0)));
}

TEST_CASE("path_to_leader on paths and stars") {
  const auto path = build_network(4, {{0, 1}, {1, 2}, {2, 3}}, Mode::Undirected, 0);
  REQUIRE(path_to_leader(path, 3).nodes == std::vector<int>{1, 2, 3});
  REQUIRE(path_to_leader(path, 1).nodes == std::vector<int>{1});

  const auto star = generate(GraphKind::Star, 5, 0, Mode::Undirected);
  for (int leaf = 1; leaf < 5; ++leaf)
    REQUIRE(path_to_leader(star, leaf).nodes == std::vector<int>{leaf});

  REQUIRE_THROWS_AS(path_to_leader(path, 0), InvalidInput);
  const auto cycle = build_network(3, {{0, 1}, {1, 2}, {2, 0}}, Mode::Undirected, 0);
  REQUIRE_THROWS_AS(path_to_leader(cycle, 1), InvalidInput);
}

TEST_CASE("path intersections count shared stem nodes") {
  // leader 0 with a stem node 1 splitting into chains 1-2-3 and 1-4
  const auto tree =
      build_network(5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}}, Mode::Undirected, 0);
  const auto p3 = path_to_leader(tree, 3).nodes;
  const auto p4 = path_to_leader(tree, 4).nodes;
  std::vector<int> common;
  std::set_intersection(p3.begin(), p3.end(), p4.begin(), p4.end(),
                        std::back_inserter(common));
  REQUIRE(common == std::vector<int>{1});

  const auto p2 = path_to_leader(tree, 2).nodes;
  common.clear();
  std::set_intersection(p3.begin(), p3.end(), p2.begin(), p2.end(),
                        std::back_inserter(common));
  REQUIRE(common.size() == 2);
}

TEST_CASE("path intersection equals common leader-path edges") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto net = random_tree(8, seed);
    const auto parent = [&] {
      // edge path to the leader per node, as sorted (min,max) pairs
      std::vector<std::vector<std::pair<int, int>>> edge_paths(net.node_count);
      for (int v = 0; v < net.node_count; ++v) {
        if (v == net.leader) continue;
        const auto nodes = path_to_leader(net, v).nodes;
        // reconstruct edges by walking the unique path
        std::set<int> on_path(nodes.begin(), nodes.end());
        on_path.insert(net.leader);
        int cur = net.leader;
        std::set<int> remaining(nodes.begin(), nodes.end());
        while (!remaining.empty()) {
          for (int w : net.undirected_adj[cur])
            if (remaining.count(w)) {
              edge_paths[v].push_back(std::minmax(cur, w));
              cur = w;
              remaining.erase(w);
              break;
            }
        }
      }
      return edge_paths;
    }();
    for (int i = 0; i < net.node_count; ++i) {
      if (i == net.leader) continue;
      for (int j = 0; j < net.node_count; ++j) {
        if (j == net.leader) continue;
        const auto pi = path_to_leader(net, i).nodes;
        const auto pj = path_to_leader(net, j).nodes;
        std::vector<int> common;
        std::set_intersection(pi.begin(), pi.end(), pj.begin(), pj.end(),
                              std::back_inserter(common));
        std::set<std::pair<int, int>> ei(parent[i].begin(), parent[i].end());
        int shared_edges = 0;
        for (const auto& e : parent[j]) shared_edges += ei.count(e);
        REQUIRE(static_cast<int>(common.size()) == shared_edges);
      }
    }
  }
}

TEST_CASE("leader_rooted_paths on canonical shapes") {
  const auto path = generate(GraphKind::Path, 5, 0, Mode::Undirected);
  const auto single = leader_rooted_paths(path);
  REQUIRE(single.size() == 1);
  REQUIRE(single[0].nodes == std::vector<int>{1, 2, 3, 4});
  REQUIRE(single[0].segment == std::vector<int>{1, 2, 3, 4});

  const auto star = generate(GraphKind::Star, 5, 0, Mode::Undirected);
  const auto leaves = leader_rooted_paths(star);
  REQUIRE(leaves.size() == 4);
  for (const auto& p : leaves) {
    REQUIRE(p.length() == 1);
    REQUIRE(p.segment == p.nodes);
  }

  // leader with chains of lengths 2 and 3
  const auto two_chains =
      build_network(6, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {4, 5}}, Mode::Undirected, 0);
  const auto paths = leader_rooted_paths(two_chains);
  REQUIRE(paths.size() == 2);
  REQUIRE(paths[0].segment.size() == 2);
  REQUIRE(paths[1].segment.size() == 3);

  // branching below a shared stem: segments are the fresh suffixes
  const auto branched = build_network(4, {{0, 1}, {1, 2}, {1, 3}}, Mode::Undirected, 0);
  const auto bp = leader_rooted_paths(branched);
  REQUIRE(bp.size() == 2);
  REQUIRE(bp[0].nodes == std::vector<int>{1, 2});
  REQUIRE(bp[0].segment == std::vector<int>{1, 2});
  REQUIRE(bp[1].nodes == std::vector<int>{1, 3});
  REQUIRE(bp[1].segment == std::vector<int>{3});
}

TEST_CASE("segments partition the follower set") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Mode mode : {Mode::Undirected, Mode::Directed}) {
      const auto net = generate(GraphKind::RandomTree, 9, static_cast<int>(seed % 9),
                                mode, seed + 1);
      const auto paths = leader_rooted_paths(net);
      std::set<int> covered;
      std::size_t total = 0;
      for (const auto& p : paths) {
        total += p.segment.size();
        covered.insert(p.segment.begin(), p.segment.end());
      }
      REQUIRE(covered.size() == total);  // disjoint
      const auto followers = net.followers();
      REQUIRE(covered == std::set<int>(followers.begin(), followers.end()));
    }
  }
}

TEST_CASE("is_leader_cut_vertex") {
  REQUIRE(is_leader_cut_vertex(generate(GraphKind::Star, 4, 0, Mode::Undirected)));
  REQUIRE_FALSE(is_leader_cut_vertex(generate(GraphKind::Path, 4, 0, Mode::Undirected)));
  REQUIRE(is_leader_cut_vertex(generate(GraphKind::Path, 4, 1, Mode::Undirected)));

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const auto net = random_tree(n, seed * 17 + 1, Mode::Undirected,
                                 static_cast<int>(seed % n));
    REQUIRE(is_leader_cut_vertex(net) == (net.degree(net.leader) >= 2));
  }
}

TEST_CASE("generate is deterministic and produces valid trees") {
  const auto a = random_tree(10, 7);
  const auto b = random_tree(10, 7);
  REQUIRE(a.edges == b.edges);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto net = random_tree(12, seed);
    REQUIRE(validate_tree(net));
    const auto dnet = generate(GraphKind::RandomTree, 12, 3, Mode::Directed, seed);
    REQUIRE(validate_tree(dnet));
  }

  REQUIRE_THROWS_AS(generate(GraphKind::Path, 1, 0, Mode::Undirected), InvalidInput);
}

TEST_CASE("every labeled tree on 3 nodes shows up") {
  std::set<std::set<int>> hubs;  // identify a 3-node tree by its center
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto net = random_tree(3, seed);
    for (int v = 0; v < 3; ++v)
      if (net.degree(v) == 2) hubs.insert({v});
  }
  REQUIRE(hubs.size() == 3);
}

TEST_CASE("directed platoon orients edges away from an interior leader") {
  const auto net = generate(GraphKind::Platoon, 5, 2, Mode::Directed);
  const std::set<std::pair<int, int>> expect{{2, 3}, {3, 4}, {2, 1}, {1, 0}};
  REQUIRE(std::set<std::pair<int, int>>(net.edges.begin(), net.edges.end()) == expect);
  REQUIRE(validate_tree(net));
}

TEST_CASE("network JSON round trip") {
  const auto net = generate(GraphKind::RandomTree, 8, 2, Mode::Directed, 5);
  const auto j = network_to_json(net);
  const auto back = network_from_json(j);
  REQUIRE(back.node_count == net.node_count);
  REQUIRE(back.leader == net.leader);
  REQUIRE(back.mode == net.mode);
  REQUIRE(back.edges == net.edges);

  REQUIRE_THROWS_AS(network_from_json(nlohmann::json{{"n", 3}}), InvalidInput);
}
