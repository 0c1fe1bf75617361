#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adgame/spectral.hpp"

namespace adgame {

/// Absolute tolerance for payoff equality. Tree kernels are integer-valued,
/// so real ties are exact; the slack only absorbs singular-value rounding.
inline constexpr double kPayoffTol = 1e-9;

/// Enumeration guard shared by the exhaustive solvers.
inline constexpr long long kMaxPairEvaluations = 10'000'000;

/// Zero-sum placement game over a payoff kernel: the attacker picks f kernel
/// columns, the detector picks f kernel rows, and the payoff is `scale`
/// times the largest singular value of the selected submatrix.
struct GameInstance {
  GroundedKernel kernel;
  int f = 1;
  double scale = 1.0;
};

inline GameInstance make_game(GroundedKernel kernel, int f, double scale = 1.0) {
  if (f < 1 || f > kernel.size())
    throw InvalidInput("make_game: f must satisfy 1 <= f <= " + std::to_string(kernel.size()));
  if (scale <= 0.0) throw InvalidInput("make_game: scale must be positive");
  return GameInstance{std::move(kernel), f, scale};
}

/// Attacker columns and detector rows, each a strictly increasing list of f
/// kernel positions.
struct PlacementPair {
  std::vector<int> attacker;
  std::vector<int> detector;
};

namespace detail {

inline void check_placement(const std::vector<int>& set, int f, int n, const char* who) {
  if (static_cast<int>(set.size()) != f)
    throw InvalidInput(std::string(who) + ": placement must have exactly f entries");
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] < 0 || set[i] >= n)
      throw InvalidInput(std::string(who) + ": placement index out of range");
    if (i > 0 && set[i] <= set[i - 1])
      throw InvalidInput(std::string(who) + ": placement indices must be strictly increasing");
  }
}

/// a < b lexicographically; used to break exact payoff ties.
inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

inline double payoff(const GameInstance& game, const PlacementPair& pair) {
  const int n = game.kernel.size();
  detail::check_placement(pair.attacker, game.f, n, "payoff(attacker)");
  detail::check_placement(pair.detector, game.f, n, "payoff(detector)");
  if (game.f == 1) return game.scale * game.kernel.inv(pair.detector[0], pair.attacker[0]);
  MatD sub(game.f, game.f);
  for (int r = 0; r < game.f; ++r)
    for (int c = 0; c < game.f; ++c)
      sub(r, c) = game.kernel.inv(pair.detector[r], pair.attacker[c]);
  return game.scale * sigma_max(sub);
}

/// All k-subsets of {0..m-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(int m, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == m - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline long long binomial(int m, int k) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (m - k + i) / i;
    if (r > (1LL << 62) / m) return std::numeric_limits<long long>::max();
  }
  return r;
}

enum class EquilibriumKind { PureNash, Stackelberg };

inline std::string equilibrium_kind_name(EquilibriumKind k) {
  return k == EquilibriumKind::PureNash ? "pure_nash" : "stackelberg";
}

enum class Certification { SaddleCheck, BruteForce, TreePartition };

inline std::string certification_name(Certification c) {
  switch (c) {
    case Certification::SaddleCheck: return "saddle_check";
    case Certification::BruteForce: return "brute_force";
    case Certification::TreePartition: return "algorithm1";
  }
  throw InvalidInput("certification_name: bad enum");
}

struct EquilibriumReport {
  EquilibriumKind kind = EquilibriumKind::PureNash;
  std::vector<PlacementPair> strategies;
  double value = 0.0;
  Certification certified_by = Certification::SaddleCheck;
  long long evaluations = 0;
};

namespace detail {

inline void check_pair_guard(long long count, const char* who) {
  if (count > 0 && count > kMaxPairEvaluations / count)
    throw LimitExceeded(std::string(who) + ": " + std::to_string(count) + "^2 pair evaluations exceed the guard of " +
                        std::to_string(kMaxPairEvaluations));
}

}  // namespace detail

/// Exhaustive pure-Nash search: every (detector, attacker) pair of f-subsets
/// is tested against the saddle condition. Returns all equilibria, or
/// nothing when the game has none (a legitimate outcome, not an error).
inline std::optional<EquilibriumReport> pure_nash_all(const GameInstance& game) {
  detail::check_pair_guard(binomial(game.kernel.size(), game.f), "pure_nash_all");
  const auto combos = combinations(game.kernel.size(), game.f);
  const long long n = static_cast<long long>(combos.size());

  std::vector<double> p(static_cast<std::size_t>(n) * n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j)
      p[i * n + j] = payoff(game, {combos[j], combos[i]});

  std::vector<double> rowmin(n, std::numeric_limits<double>::infinity());
  std::vector<double> colmax(n, -std::numeric_limits<double>::infinity());
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) {
      rowmin[i] = std::min(rowmin[i], p[i * n + j]);
      colmax[j] = std::max(colmax[j], p[i * n + j]);
    }

  EquilibriumReport report;
  report.kind = EquilibriumKind::PureNash;
  report.certified_by = Certification::SaddleCheck;
  report.evaluations = n * n;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) {
      const double v = p[i * n + j];
      if (v >= colmax[j] - kPayoffTol && v <= rowmin[i] + kPayoffTol) {
        report.strategies.push_back({combos[j], combos[i]});
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  if (report.strategies.empty()) return std::nullopt;
  if (hi - lo > kPayoffTol)
    throw std::logic_error("pure_nash_all: equilibria disagree on the game value");
  report.value = hi;
  return report;
}

/// Worst violation of the saddle inequalities for one pair: positive means
/// some unilateral deviation beats the pair, <= 0 certifies equilibrium.
inline double saddle_violation(const GameInstance& game, const PlacementPair& pair) {
  const double v = payoff(game, pair);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : combinations(game.kernel.size(), game.f)) {
    worst = std::max(worst, payoff(game, {pair.attacker, s}) - v);
    worst = std::max(worst, v - payoff(game, {s, pair.detector}));
  }
  return worst;
}

/// Check one placement pair against the saddle inequalities without
/// enumerating all pairs (used to certify predicted equilibria).
inline bool is_saddle_point(const GameInstance& game, const PlacementPair& pair,
                            double tol = kPayoffTol) {
  return saddle_violation(game, pair) <= tol;
}

/// Structural f=1 equilibrium prediction, no payoffs computed. Undirected
/// trees admit a pure NE exactly when the leader is not a cut vertex (a
/// leaf), with game value 1; directed trees exactly when the whole graph is
/// a single directed path, again with value 1.
struct NePrediction {
  bool exists = false;
  double value = 0.0;  // meaningful only when exists
};

inline NePrediction predict_ne_f1(const LeaderNetwork& net) {
  require_tree(net, "predict_ne_f1");
  if (net.mode == Mode::Undirected) {
    if (net.degree(net.leader) == 1) return {true, 1.0};
    return {false, 0.0};
  }
  const bool is_path = [&] {
    for (int v = 0; v < net.node_count; ++v)
      if (net.degree(v) > 2) return false;
    return net.degree(net.leader) == 1;
  }();
  return is_path ? NePrediction{true, 1.0} : NePrediction{false, 0.0};
}

/// Max-min over every pair of f-subsets: the detector commits, the attacker
/// best-responds. Exact payoff ties are broken toward the lexicographically
/// smallest index set.
inline EquilibriumReport stackelberg_bruteforce(const GameInstance& game) {
  detail::check_pair_guard(binomial(game.kernel.size(), game.f), "stackelberg_bruteforce");
  const auto combos = combinations(game.kernel.size(), game.f);
  const long long n = static_cast<long long>(combos.size());

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_c = 0, best_b = 0;
  for (std::size_t ci = 0; ci < combos.size(); ++ci) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_b = 0;
    for (std::size_t bi = 0; bi < combos.size(); ++bi) {
      const double v = payoff(game, {combos[bi], combos[ci]});
      if (v < worst) {  // ties keep the earlier (lex smaller) attacker set
        worst = v;
        worst_b = bi;
      }
    }
    if (worst > best) {  // ties keep the earlier (lex smaller) detector set
      best = worst;
      best_c = ci;
      best_b = worst_b;
    }
  }

  EquilibriumReport report;
  report.kind = EquilibriumKind::Stackelberg;
  report.certified_by = Certification::BruteForce;
  report.evaluations = n * n;
  report.value = best;
  report.strategies.push_back({combos[best_b], combos[best_c]});
  return report;
}

/// A split of f across m parts with per-part caps.
struct ConstrainedPartition {
  std::vector<int> parts;
  std::vector<int> caps;
};

/// All ways to write f = f_1 + ... + f_m with 0 <= f_i <= caps[i], in
/// lexicographic order.
inline std::vector<ConstrainedPartition> enumerate_partitions(int f,
                                                              const std::vector<int>& caps) {
  long long total = 0;
  for (int c : caps) {
    if (c < 0) throw InvalidInput("enumerate_partitions: negative cap");
    total += c;
  }
  if (f < 0 || total < f)
    throw InvalidInput("enumerate_partitions: infeasible, caps sum to " +
                       std::to_string(total) + " < f = " + std::to_string(f));

  std::vector<ConstrainedPartition> out;
  std::vector<int> cur(caps.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, int remaining) -> void {
    if (idx == caps.size()) {
      if (remaining == 0) out.push_back({cur, caps});
      return;
    }
    const int top = std::min(caps[idx], remaining);
    for (int v = 0; v <= top; ++v) {
      cur[idx] = v;
      self(self, idx + 1, remaining - v);
    }
    cur[idx] = 0;
  };
  rec(rec, 0, f);
  return out;
}

/// Stackelberg solver for trees that searches only constrained partitions of
/// f across leader-rooted path segments. Within segment i the detector takes
/// the f_i deepest nodes; the attacker takes the f_i shallowest nodes in
/// undirected mode and the f_i deepest in directed mode. The search runs
/// S^2 payoff evaluations for S feasible partitions.
inline EquilibriumReport stackelberg_tree(const GameInstance& game,
                                          const LeaderNetwork& net) {
  require_tree(net, "stackelberg_tree");
  const auto paths = leader_rooted_paths(net);
  std::vector<int> caps;
  caps.reserve(paths.size());
  for (const auto& p : paths) caps.push_back(static_cast<int>(p.segment.size()));
  const auto partitions = enumerate_partitions(game.f, caps);
  const long long s = static_cast<long long>(partitions.size());
  detail::check_pair_guard(s, "stackelberg_tree");

  auto place = [&](const ConstrainedPartition& part, bool deepest) {
    std::vector<int> set;
    set.reserve(game.f);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto& seg = paths[i].segment;  // shallow to deep
      const int take = part.parts[i];
      for (int k = 0; k < take; ++k) {
        const int node = deepest ? seg[seg.size() - 1 - k] : seg[k];
        set.push_back(game.kernel.index_of(node));
      }
    }
    std::sort(set.begin(), set.end());
    return set;
  };

  std::vector<std::vector<int>> detector_sets, attacker_sets;
  detector_sets.reserve(partitions.size());
  attacker_sets.reserve(partitions.size());
  const bool attacker_deepest = net.mode == Mode::Directed;
  for (const auto& part : partitions) {
    detector_sets.push_back(place(part, true));
    attacker_sets.push_back(place(part, attacker_deepest));
  }

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_c = 0, best_b = 0;
  for (std::size_t ci = 0; ci < detector_sets.size(); ++ci) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_b = 0;
    for (std::size_t bi = 0; bi < attacker_sets.size(); ++bi) {
      const double v = payoff(game, {attacker_sets[bi], detector_sets[ci]});
      if (v < worst ||
          (v == worst && detail::lex_less(attacker_sets[bi], attacker_sets[worst_b]))) {
        worst = v;
        worst_b = bi;
      }
    }
    if (worst > best ||
        (worst == best && detail::lex_less(detector_sets[ci], detector_sets[best_c]))) {
      best = worst;
      best_c = ci;
      best_b = worst_b;
    }
  }

  EquilibriumReport report;
  report.kind = EquilibriumKind::Stackelberg;
  report.certified_by = Certification::TreePartition;
  report.evaluations = s * s;
  report.value = best;
  report.strategies.push_back({attacker_sets[best_b], detector_sets[best_c]});
  return report;
}

/// Stackelberg values of a directed tree and of its undirected counterpart,
/// plus the dominance flag J_d <= J_u.
struct DirectedComparison {
  double j_directed = 0.0;
  double j_undirected = 0.0;
  bool ordered = false;
};

inline DirectedComparison compare_directed_undirected(const LeaderNetwork& net, int f) {
  if (net.mode != Mode::Directed)
    throw InvalidInput("compare_directed_undirected: directed network required");
  require_tree(net, "compare_directed_undirected");
  const auto undirected = to_undirected(net);
  DirectedComparison cmp;
  cmp.j_directed = stackelberg_tree(make_game(closed_form_directed(net), f), net).value;
  cmp.j_undirected =
      stackelberg_tree(make_game(closed_form_undirected(undirected), f), undirected).value;
  cmp.ordered = cmp.j_directed <= cmp.j_undirected + kPayoffTol;
  return cmp;
}

}  // namespace adgame
