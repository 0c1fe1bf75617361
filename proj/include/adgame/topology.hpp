#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adgame/common.hpp"

namespace adgame {

enum class Mode { Undirected, Directed };

inline std::string mode_name(Mode m) {
  return m == Mode::Undirected ? "undirected" : "directed";
}

inline Mode mode_from_name(const std::string& s) {
  if (s == "undirected") return Mode::Undirected;
  if (s == "directed") return Mode::Directed;
  throw InvalidInput("unknown mode: " + s);
}

/// A leader-follower network: one distinguished leader plus followers,
/// connected by unweighted edges. Directed edges [u,v] mean u -> v, i.e.
/// v listens to u. Immutable after construction.
struct LeaderNetwork {
  int node_count = 0;
  Mode mode = Mode::Undirected;
  int leader = 0;
  std::vector<std::pair<int, int>> edges;

  // Derived adjacency, built once by build_network. `undirected_adj` ignores
  // direction; `out_adj`/`in_adj` follow it (and alias undirected_adj in
  // undirected mode). Neighbor lists are sorted ascending.
  std::vector<std::vector<int>> undirected_adj;
  std::vector<std::vector<int>> out_adj;
  std::vector<std::vector<int>> in_adj;

  int degree(int v) const { return static_cast<int>(undirected_adj[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_adj[v].size()); }
  int out_degree(int v) const { return static_cast<int>(out_adj[v].size()); }

  /// Followers in ascending node order (the leader deleted).
  std::vector<int> followers() const {
    std::vector<int> f;
    f.reserve(node_count - 1);
    for (int v = 0; v < node_count; ++v)
      if (v != leader) f.push_back(v);
    return f;
  }
};

inline LeaderNetwork build_network(int n, std::vector<std::pair<int, int>> edges,
                                   Mode mode, int leader) {
  if (n < 2) throw InvalidInput("build_network: need at least 2 nodes");
  if (leader < 0 || leader >= n) throw InvalidInput("build_network: leader index out of range");
  if (edges.empty()) throw InvalidInput("build_network: edge list is empty");

  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidInput("build_network: edge index out of range");
    if (u == v) throw InvalidInput("build_network: self-loop on node " + std::to_string(u));
    const std::pair<int, int> key =
        mode == Mode::Undirected ? std::pair{std::min(u, v), std::max(u, v)}
                                 : std::pair{u, v};
    if (!seen.insert(key).second)
      throw InvalidInput("build_network: duplicate edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ")");
    if (mode == Mode::Directed && seen.count({v, u}))
      throw InvalidInput("build_network: anti-parallel edge pair (" + std::to_string(u) +
                         "," + std::to_string(v) + ")");
  }

  LeaderNetwork net;
  net.node_count = n;
  net.mode = mode;
  net.leader = leader;
  net.edges = std::move(edges);
  net.undirected_adj.assign(n, {});
  net.out_adj.assign(n, {});
  net.in_adj.assign(n, {});
  for (const auto& [u, v] : net.edges) {
    net.undirected_adj[u].push_back(v);
    net.undirected_adj[v].push_back(u);
    if (mode == Mode::Directed) {
      net.out_adj[u].push_back(v);
      net.in_adj[v].push_back(u);
    }
  }
  if (mode == Mode::Undirected) {
    net.out_adj = net.undirected_adj;
    net.in_adj = net.undirected_adj;
  }
  for (auto* adj : {&net.undirected_adj, &net.out_adj, &net.in_adj})
    for (auto& nbrs : *adj) std::sort(nbrs.begin(), nbrs.end());
  return net;
}

/// BFS hop distances from the leader. Directed mode follows edge direction;
/// unreachable nodes get -1.
inline std::vector<int> leader_distances(const LeaderNetwork& net) {
  std::vector<int> dist(net.node_count, -1);
  std::deque<int> queue{net.leader};
  dist[net.leader] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : net.out_adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline bool is_connected_underlying(const LeaderNetwork& net) {
  std::vector<char> seen(net.node_count, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : net.undirected_adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        queue.push_back(w);
      }
  }
  return count == net.node_count;
}

/// Every follower reachable from the leader along directed edges.
inline bool all_reachable_from_leader(const LeaderNetwork& net) {
  const auto dist = leader_distances(net);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

/// True iff the network is a valid tree for this library: undirected mode
/// needs n-1 edges and connectivity; directed mode additionally needs every
/// follower reachable from the leader.
inline bool validate_tree(const LeaderNetwork& net) {
  if (static_cast<int>(net.edges.size()) != net.node_count - 1) return false;
  if (!is_connected_underlying(net)) return false;
  if (net.mode == Mode::Directed && !all_reachable_from_leader(net)) return false;
  return true;
}

inline void require_tree(const LeaderNetwork& net, const char* who) {
  if (!validate_tree(net))
    throw InvalidInput(std::string(who) + ": network is not a valid tree");
}

/// Nodes on the unique leader-to-i path, including i, excluding the leader.
struct PathToLeader {
  int node = -1;
  std::vector<int> nodes;  // sorted ascending
};

namespace detail {

/// Parent of each node in the leader-rooted tree (leader's parent is -1).
inline std::vector<int> leader_rooted_parents(const LeaderNetwork& net) {
  std::vector<int> parent(net.node_count, -2);
  std::deque<int> queue{net.leader};
  parent[net.leader] = -1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : net.out_adj[v])
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  return parent;
}

}  // namespace detail

inline PathToLeader path_to_leader(const LeaderNetwork& net, int i) {
  require_tree(net, "path_to_leader");
  if (i == net.leader) throw InvalidInput("path_to_leader: i is the leader");
  if (i < 0 || i >= net.node_count) throw InvalidInput("path_to_leader: index out of range");
  const auto parent = detail::leader_rooted_parents(net);
  PathToLeader p;
  p.node = i;
  for (int v = i; v != net.leader; v = parent[v]) p.nodes.push_back(v);
  std::sort(p.nodes.begin(), p.nodes.end());
  return p;
}

/// A path from the leader's neighbor down to a terminal node (degree 1;
/// out-degree 0 in directed mode). `segment` is the suffix of nodes that no
/// earlier path in the enumeration already covered; segments across all
/// paths partition the follower set.
struct LeaderRootedPath {
  std::vector<int> nodes;    // leader's neighbor first, terminal last
  std::vector<int> segment;  // fresh suffix, shallow to deep
  int length() const { return static_cast<int>(nodes.size()); }
};

/// All leader-rooted paths, depth-first from the leader with children in
/// ascending node order, so consecutive paths share maximal prefixes.
inline std::vector<LeaderRootedPath> leader_rooted_paths(const LeaderNetwork& net) {
  require_tree(net, "leader_rooted_paths");
  std::vector<LeaderRootedPath> out;
  std::vector<char> in_some_path(net.node_count, 0);
  std::vector<int> stack;  // current path, leader excluded

  auto dfs = [&](auto&& self, int node, int parent) -> void {
    bool terminal = node != net.leader;
    for (int w : net.out_adj[node]) {
      if (w == parent) continue;
      terminal = false;
      stack.push_back(w);
      self(self, w, node);
      stack.pop_back();
    }
    if (terminal) {
      LeaderRootedPath path;
      path.nodes = stack;
      for (int v : stack)
        if (!in_some_path[v]) {
          path.segment.push_back(v);
          in_some_path[v] = 1;
        }
      out.push_back(std::move(path));
    }
  };
  dfs(dfs, net.leader, -1);
  return out;
}

/// True iff removing the leader disconnects the remaining followers.
inline bool is_leader_cut_vertex(const LeaderNetwork& net) {
  const int follower_count = net.node_count - 1;
  if (follower_count <= 1) return false;
  std::vector<char> seen(net.node_count, 0);
  seen[net.leader] = 1;  // excluded from the traversal
  const int start = net.leader == 0 ? 1 : 0;
  std::deque<int> queue{start};
  seen[start] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : net.undirected_adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        queue.push_back(w);
      }
  }
  return count != follower_count;
}

enum class GraphKind { Path, Star, RandomTree, Platoon };

inline GraphKind graph_kind_from_name(const std::string& s) {
  if (s == "path") return GraphKind::Path;
  if (s == "star") return GraphKind::Star;
  if (s == "random_tree") return GraphKind::RandomTree;
  if (s == "platoon") return GraphKind::Platoon;
  throw InvalidInput("unknown graph kind: " + s);
}

namespace detail {

/// Decode a Prüfer sequence into tree edges. A uniform random sequence gives
/// a uniform random labeled tree.
inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> degree(n, 1);
  for (int s : seq) ++degree[s];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int s : seq) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, s);
    if (--degree[s] == 1) leaves.insert(s);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return edges;
}

/// Orient a tree's edges away from the leader (parent -> child).
inline std::vector<std::pair<int, int>> orient_away_from(
    const std::vector<std::pair<int, int>>& undirected_edges, int n, int leader) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : undirected_edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::pair<int, int>> oriented;
  oriented.reserve(undirected_edges.size());
  std::vector<char> seen(n, 0);
  std::deque<int> queue{leader};
  seen[leader] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        oriented.emplace_back(v, w);
        queue.push_back(w);
      }
  }
  return oriented;
}

}  // namespace detail

/// Deterministic graph generator. Path/platoon lay nodes out in index order
/// with the leader at `leader_pos`; star puts the leader at the hub; random
/// trees decode a seeded uniform Prüfer sequence. Directed mode orients
/// every edge away from the leader.
inline LeaderNetwork generate(GraphKind kind, int n, int leader_pos, Mode mode,
                              std::uint64_t seed = 0) {
  if (n < 2) throw InvalidInput("generate: need at least 2 nodes");
  if (leader_pos < 0 || leader_pos >= n) throw InvalidInput("generate: leader position out of range");

  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case GraphKind::Path:
    case GraphKind::Platoon:
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case GraphKind::Star:
      for (int v = 0; v < n; ++v)
        if (v != leader_pos) edges.emplace_back(leader_pos, v);
      break;
    case GraphKind::RandomTree: {
      SplitMix64 rng(seed);
      std::vector<int> seq(std::max(0, n - 2));
      for (int& s : seq) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      edges = detail::prufer_decode(seq, n);
      break;
    }
  }
  if (mode == Mode::Directed) edges = detail::orient_away_from(edges, n, leader_pos);
  return build_network(n, std::move(edges), mode, leader_pos);
}

/// The same network with edge directions dropped.
inline LeaderNetwork to_undirected(const LeaderNetwork& net) {
  if (net.mode == Mode::Undirected) return net;
  return build_network(net.node_count, net.edges, Mode::Undirected, net.leader);
}

}  // namespace adgame
