#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "adgame/matrix.hpp"
#include "adgame/topology.hpp"

namespace adgame {

/// Grounded Laplacian system: the graph Laplacian with the leader's row and
/// column removed. `l12` is the Laplacian's leader column restricted to the
/// followers (entries are -1 where a follower listens to the leader), so each
/// row of [lg | l12] sums to zero in undirected mode.
struct GroundedSystem {
  MatD lg;
  std::vector<double> l12;
  std::vector<int> follower_order;  // original node index per matrix row
  Mode mode = Mode::Undirected;
};

namespace detail {

inline MatD grounded_laplacian(const LeaderNetwork& net, const std::vector<int>& order,
                               std::vector<double>* l12_out = nullptr) {
  const int m = static_cast<int>(order.size());
  std::vector<int> pos(net.node_count, -1);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;

  MatD lg(m, m);
  std::vector<double> l12(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int a = order[i];
    lg(i, i) = net.mode == Mode::Undirected ? net.degree(a) : net.in_degree(a);
    for (int b : net.in_adj[a]) {
      if (b == net.leader)
        l12[i] -= 1.0;
      else
        lg(i, pos[b]) -= 1.0;
    }
  }
  if (l12_out) *l12_out = std::move(l12);
  return lg;
}

/// Follower ordering that makes directed-tree grounded Laplacians lower
/// triangular: breadth-first by leader distance, ties by node index.
inline std::vector<int> distance_order(const LeaderNetwork& net) {
  const auto dist = leader_distances(net);
  auto order = net.followers();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] < dist[b]; });
  return order;
}

}  // namespace detail

inline GroundedSystem grounded_system(const LeaderNetwork& net) {
  GroundedSystem sys;
  sys.mode = net.mode;
  if (net.mode == Mode::Undirected) {
    if (!is_connected_underlying(net))
      throw InvalidInput("grounded_system: graph is disconnected");
    sys.follower_order = net.followers();
  } else {
    if (!all_reachable_from_leader(net))
      throw InvalidInput("grounded_system: some follower is unreachable from the leader");
    sys.follower_order = detail::distance_order(net);
  }
  sys.lg = detail::grounded_laplacian(net, sys.follower_order, &sys.l12);
  return sys;
}

enum class KernelMethod { Numeric, ClosedFormUndirected, ClosedFormDirected };

inline std::string kernel_method_name(KernelMethod m) {
  switch (m) {
    case KernelMethod::Numeric: return "numeric";
    case KernelMethod::ClosedFormUndirected: return "lemma2";
    case KernelMethod::ClosedFormDirected: return "lemma3";
  }
  throw InvalidInput("kernel_method_name: bad enum");
}

inline KernelMethod kernel_method_from_name(const std::string& s) {
  if (s == "numeric") return KernelMethod::Numeric;
  if (s == "lemma2") return KernelMethod::ClosedFormUndirected;
  if (s == "lemma3") return KernelMethod::ClosedFormDirected;
  throw InvalidInput("unknown kernel method: " + s);
}

/// The game payoff kernel: the inverse grounded Laplacian, elementwise
/// nonnegative, with the follower ordering its rows and columns refer to.
struct GroundedKernel {
  MatD inv;
  KernelMethod method = KernelMethod::Numeric;
  std::vector<int> follower_order;

  int size() const { return inv.rows(); }

  /// Kernel row/column position of an original node index.
  int index_of(int node) const {
    const auto it = std::find(follower_order.begin(), follower_order.end(), node);
    if (it == follower_order.end())
      throw InvalidInput("GroundedKernel: node " + std::to_string(node) +
                         " is not a follower");
    return static_cast<int>(it - follower_order.begin());
  }
};

/// Inverse by LU with partial pivoting. A pivot below 1e-12 signals a
/// disconnected graph or an unreachable follower.
inline GroundedKernel invert_numeric(const GroundedSystem& sys) {
  GroundedKernel k;
  k.method = KernelMethod::Numeric;
  k.follower_order = sys.follower_order;
  k.inv = LuFactorization<double>(sys.lg, 1e-12).inverse();
  return k;
}

/// Undirected-tree closed form: entry (i,j) counts the nodes shared by the
/// leader-to-i and leader-to-j paths (equivalently their common edges).
inline GroundedKernel closed_form_undirected(const LeaderNetwork& net) {
  if (net.mode != Mode::Undirected)
    throw InvalidInput("closed_form_undirected: undirected network required");
  require_tree(net, "closed_form_undirected");

  GroundedKernel k;
  k.method = KernelMethod::ClosedFormUndirected;
  k.follower_order = net.followers();
  const int m = static_cast<int>(k.follower_order.size());

  std::vector<std::vector<int>> paths(m);
  for (int i = 0; i < m; ++i) paths[i] = path_to_leader(net, k.follower_order[i]).nodes;

  k.inv = MatD(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      std::vector<int> common;
      std::set_intersection(paths[i].begin(), paths[i].end(), paths[j].begin(),
                            paths[j].end(), std::back_inserter(common));
      k.inv(i, j) = k.inv(j, i) = static_cast<double>(common.size());
    }
  return k;
}

/// Directed-tree closed form: entry (i,j) is 1 when a directed path runs
/// from j to i (diagonal included), else 0. With followers ordered by leader
/// distance the matrix is lower triangular with unit diagonal.
inline GroundedKernel closed_form_directed(const LeaderNetwork& net) {
  if (net.mode != Mode::Directed)
    throw InvalidInput("closed_form_directed: directed network required");
  require_tree(net, "closed_form_directed");

  GroundedKernel k;
  k.method = KernelMethod::ClosedFormDirected;
  k.follower_order = detail::distance_order(net);
  const int m = static_cast<int>(k.follower_order.size());

  const auto parent = detail::leader_rooted_parents(net);
  std::vector<int> pos(net.node_count, -1);
  for (int i = 0; i < m; ++i) pos[k.follower_order[i]] = i;

  k.inv = MatD(m, m);
  for (int i = 0; i < m; ++i) {
    for (int v = k.follower_order[i]; v != net.leader; v = parent[v])
      k.inv(i, pos[v]) = 1.0;
  }
  return k;
}

/// Pick the exact closed form when the topology admits one, otherwise fall
/// back to numeric inversion.
inline GroundedKernel grounded_kernel(const LeaderNetwork& net) {
  if (validate_tree(net))
    return net.mode == Mode::Undirected ? closed_form_undirected(net)
                                        : closed_form_directed(net);
  return invert_numeric(grounded_system(net));
}

/// Residual of the identity relating a directed tree's grounded Laplacian to
/// its undirected counterpart: max |Lgd^T Lgd - Lgu|, both built over the
/// same ascending follower ordering.
inline double factorization_check(const LeaderNetwork& net) {
  if (net.mode != Mode::Directed)
    throw InvalidInput("factorization_check: directed network required");
  require_tree(net, "factorization_check");
  const auto order = net.followers();
  const MatD lgd = detail::grounded_laplacian(net, order);
  const MatD lgu = detail::grounded_laplacian(to_undirected(net), order);
  return max_abs_diff(lgd.transpose() * lgd, lgu);
}

/// Count spanning 2-trees of an undirected tree that keep followers i and j
/// together and apart from the leader, by exhaustive single-edge deletion.
/// Serves as an independent combinatorial oracle for the undirected closed
/// form. i == j is allowed.
inline int two_tree_count(const LeaderNetwork& net, int i, int j) {
  if (net.mode != Mode::Undirected)
    throw InvalidInput("two_tree_count: undirected network required");
  require_tree(net, "two_tree_count");
  if (i == net.leader || j == net.leader)
    throw InvalidInput("two_tree_count: i and j must be followers");

  int count = 0;
  for (std::size_t skip = 0; skip < net.edges.size(); ++skip) {
    // component containing the leader after deleting edge `skip`
    std::vector<char> with_leader(net.node_count, 0);
    with_leader[net.leader] = 1;
    std::deque<int> queue{net.leader};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (std::size_t e = 0; e < net.edges.size(); ++e) {
        if (e == skip) continue;
        const auto& [a, b] = net.edges[e];
        const int w = a == v ? b : (b == v ? a : -1);
        if (w >= 0 && !with_leader[w]) {
          with_leader[w] = 1;
          queue.push_back(w);
        }
      }
    }
    if (!with_leader[i] && !with_leader[j]) ++count;
  }
  return count;
}

}  // namespace adgame
