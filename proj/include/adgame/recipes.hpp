#pragma once

#include <string>
#include <vector>

#include "adgame/game.hpp"
#include "adgame/platoon.hpp"
#include "adgame/simulator.hpp"

// Reproduction recipes: parameterized validation sweeps over the library's
// structural claims. The CLI exposes them as `reproduce` subcommands and the
// acceptance suite runs them at its reference sizes, so both report from the
// same code path.

namespace adgame {

struct RecipeRow {
  std::string case_id;
  long long cases = 0;
  long long failures = 0;
  double worst_discrepancy = 0.0;
};

struct RecipeResult {
  std::string name;
  std::vector<RecipeRow> rows;

  long long cases() const {
    long long c = 0;
    for (const auto& r : rows) c += r.cases;
    return c;
  }
  long long failures() const {
    long long f = 0;
    for (const auto& r : rows) f += r.failures;
    return f;
  }
  double worst() const {
    double w = 0.0;
    for (const auto& r : rows) w = std::max(w, r.worst_discrepancy);
    return w;
  }
  bool passed() const { return failures() == 0; }
};

namespace detail {

inline void tally(RecipeRow& row, bool pass, double discrepancy) {
  ++row.cases;
  if (!pass) ++row.failures;
  row.worst_discrepancy = std::max(row.worst_discrepancy, discrepancy);
}

}  // namespace detail

/// f=1 equilibrium law on undirected trees: a pure NE exists iff the leader
/// is a leaf, and every NE value is exactly 1. Exhaustive over every leader
/// position of `trees_per_n` random trees for each n.
inline RecipeResult recipe_thm3(std::uint64_t seed, int n_max = 10, int trees_per_n = 100) {
  RecipeResult result{"thm3", {}};
  SplitMix64 rng(seed);
  for (int n = 3; n <= n_max; ++n) {
    RecipeRow row{"n=" + std::to_string(n)};
    for (int t = 0; t < trees_per_n; ++t) {
      const auto shape = generate(GraphKind::RandomTree, n, 0, Mode::Undirected, rng.next());
      for (int leader = 0; leader < n; ++leader) {
        const auto net = build_network(n, shape.edges, Mode::Undirected, leader);
        const bool predicted = net.degree(leader) == 1;
        const auto game = make_game(closed_form_undirected(net), 1);
        const auto actual = pure_nash_all(game);
        bool pass = actual.has_value() == predicted;
        double disc = 0.0;
        if (actual) {
          disc = std::abs(actual->value - 1.0);
          pass = pass && actual->value == 1.0;
        }
        detail::tally(row, pass, disc);
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

/// f=1 equilibrium law on directed trees: a pure NE exists iff the whole
/// graph is a single directed path. Random samples plus the exhaustive
/// path/star/caterpillar families for every n.
inline RecipeResult recipe_directed_f1(std::uint64_t seed, int n_max = 8, int samples = 500) {
  RecipeResult result{"directed-f1", {}};
  SplitMix64 rng(seed);

  auto check = [](RecipeRow& row, const LeaderNetwork& net) {
    const auto predicted = predict_ne_f1(net);
    const auto actual = pure_nash_all(make_game(closed_form_directed(net), 1));
    bool pass = actual.has_value() == predicted.exists;
    double disc = 0.0;
    if (actual) {
      disc = std::abs(actual->value - 1.0);
      pass = pass && disc <= kPayoffTol;
    }
    detail::tally(row, pass, disc);
  };

  RecipeRow random_row{"random"};
  for (int t = 0; t < samples; ++t) {
    const int n = 2 + static_cast<int>(rng.below(n_max - 1));
    const int leader = static_cast<int>(rng.below(n));
    check(random_row, generate(GraphKind::RandomTree, n, leader, Mode::Directed, rng.next()));
  }
  result.rows.push_back(std::move(random_row));

  RecipeRow family_row{"families"};
  for (int n = 2; n <= n_max; ++n) {
    for (int leader = 0; leader < n; ++leader)
      check(family_row, generate(GraphKind::Path, n, leader, Mode::Directed));
    if (n >= 3) check(family_row, generate(GraphKind::Star, n, 0, Mode::Directed));
    if (n >= 4) {
      // caterpillar: a spine with the remaining nodes hung off interior nodes
      const int spine = std::max(2, n - n / 2);
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
      for (int v = spine; v < n; ++v) edges.emplace_back(1 + (v - spine) % (spine - 1), v);
      check(family_row,
            build_network(n, detail::orient_away_from(edges, n, 0), Mode::Directed, 0));
    }
  }
  result.rows.push_back(std::move(family_row));
  return result;
}

/// Partition-based Stackelberg solver versus the exhaustive one: identical
/// values, and the partition solver's evaluation count is exactly the square
/// of the feasible partition count.
inline RecipeResult recipe_alg1_vs_brute(std::uint64_t seed, int trees = 200, int n_max = 10,
                                         int f_max = 3) {
  RecipeResult result{"alg1-vs-brute", {}};
  SplitMix64 rng(seed);
  RecipeRow undirected_row{"undirected"}, directed_row{"directed"};
  for (int t = 0; t < trees; ++t) {
    const int n = 3 + static_cast<int>(rng.below(n_max - 2));
    const int leader = static_cast<int>(rng.below(n));
    for (Mode mode : {Mode::Undirected, Mode::Directed}) {
      const auto net = generate(GraphKind::RandomTree, n, leader, mode, rng.next());
      const auto kernel = grounded_kernel(net);
      RecipeRow& row = mode == Mode::Undirected ? undirected_row : directed_row;
      for (int f = 1; f <= std::min(f_max, n - 1); ++f) {
        const auto game = make_game(kernel, f);
        const auto fast = stackelberg_tree(game, net);
        const auto brute = stackelberg_bruteforce(game);
        const auto paths = leader_rooted_paths(net);
        std::vector<int> caps;
        for (const auto& p : paths) caps.push_back(static_cast<int>(p.segment.size()));
        const long long s = static_cast<long long>(enumerate_partitions(f, caps).size());
        const double disc = std::abs(fast.value - brute.value);
        const bool pass = disc <= kPayoffTol && fast.evaluations == s * s;
        detail::tally(row, pass, disc);
      }
    }
  }
  result.rows.push_back(std::move(undirected_row));
  result.rows.push_back(std::move(directed_row));
  return result;
}

/// Direction dominance: the Stackelberg value of a directed tree never
/// exceeds that of its undirected counterpart.
inline RecipeResult recipe_thm6(std::uint64_t seed, int trees = 200, int n_max = 10,
                                int f_max = 3) {
  RecipeResult result{"thm6", {}};
  SplitMix64 rng(seed);
  RecipeRow row{"random"};
  for (int t = 0; t < trees; ++t) {
    const int n = 3 + static_cast<int>(rng.below(n_max - 2));
    const int leader = static_cast<int>(rng.below(n));
    const auto net = generate(GraphKind::RandomTree, n, leader, Mode::Directed, rng.next());
    for (int f = 1; f <= std::min(f_max, n - 1); ++f) {
      const auto cmp = compare_directed_undirected(net, f);
      const double disc = std::max(0.0, cmp.j_directed - cmp.j_undirected);
      detail::tally(row, cmp.ordered, disc);
    }
  }
  result.rows.push_back(std::move(row));
  return result;
}

namespace detail {

inline RecipeResult platoon_prediction_recipe(const char* name, Mode mode, int n_max,
                                              int f_max) {
  RecipeResult result{name, {}};
  for (int n = 2; n <= n_max; ++n) {
    RecipeRow row{"n=" + std::to_string(n)};
    for (int end : {0, n - 1}) {
      PlatoonScenario scn;
      scn.n = n;
      scn.leader_position = end;
      scn.mode = mode;
      for (int f = 1; f <= std::min(f_max, n - 1); ++f) {
        const auto pair = platoon_ne_prediction(scn, f);
        const auto game = platoon_game(scn, f);
        const double violation = saddle_violation(game, pair);
        tally(row, violation <= kPayoffTol, std::max(0.0, violation));
      }
      if (n == 2) break;  // both ends coincide up to relabeling
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace detail

/// Undirected platoon equilibrium: attacker nearest-f / detector farthest-f
/// placements satisfy the saddle inequalities for every end-leader line.
inline RecipeResult recipe_prop1(int n_max = 12, int f_max = 4) {
  return detail::platoon_prediction_recipe("prop1", Mode::Undirected, n_max, f_max);
}

/// Directed platoon equilibrium: farthest-f / farthest-f placements satisfy
/// the saddle inequalities.
inline RecipeResult recipe_prop2(int n_max = 12, int f_max = 4) {
  return detail::platoon_prediction_recipe("prop2", Mode::Directed, n_max, f_max);
}

/// Leader placement on undirected lines: no interior position beats the ends.
inline RecipeResult recipe_leader_sweep(int n_min = 4, int n_max = 12, int f_max = 3) {
  RecipeResult result{"leader-sweep", {}};
  for (int n = n_min; n <= n_max; ++n) {
    RecipeRow row{"n=" + std::to_string(n)};
    for (int f = 1; f <= std::min(f_max, n - 1); ++f) {
      const auto entries = leader_placement_sweep(n, f, Mode::Undirected);
      const double end_value = std::min(entries.front().value, entries.back().value);
      for (const auto& e : entries) {
        if (e.position == 0 || e.position == n - 1) continue;
        const double disc = std::max(0.0, e.value - end_value);
        detail::tally(row, e.boundary_ok, disc);
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

/// Simulated DC gains against the kernel submatrix C Lg^-1 B.
inline RecipeResult recipe_dc_gain(std::uint64_t seed, int nets = 20, double tol = 1e-4) {
  RecipeResult result{"dc-gain", {}};
  SplitMix64 rng(seed);
  RecipeRow row{"random"};
  for (int t = 0; t < nets; ++t) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const int leader = static_cast<int>(rng.below(n));
    auto net = generate(GraphKind::RandomTree, n, leader, Mode::Undirected, rng.next());
    if (t % 4 == 3) {
      // densify a few cases beyond trees: add one extra edge (keeps it
      // connected; the numeric kernel covers non-tree graphs)
      auto edges = net.edges;
      for (int u = 0; u < n && edges.size() < static_cast<std::size_t>(n); ++u) {
        bool added = false;
        for (int v = u + 2; v < n; ++v) {
          const bool exists = std::any_of(edges.begin(), edges.end(), [&](auto& e) {
            return (e.first == u && e.second == v) || (e.first == v && e.second == u);
          });
          if (!exists) {
            edges.emplace_back(u, v);
            added = true;
            break;
          }
        }
        if (added) break;
      }
      net = build_network(n, edges, Mode::Undirected, leader);
    }

    const auto sys = grounded_system(net);
    const auto kernel = invert_numeric(sys);
    const int m = kernel.size();
    const int f = 1 + static_cast<int>(rng.below(std::min(2, m)));
    const auto combo_a = combinations(m, f);
    const auto attacker = combo_a[rng.below(combo_a.size())];
    const auto detector = combo_a[rng.below(combo_a.size())];

    SimConfig cfg;
    cfg.dt = 0.25 / detail::gershgorin_bound(sys.lg);
    cfg.horizon = 400.0 / detail::smallest_eigen_estimate(sys.lg);
    cfg.steady_tol = 1e-9;
    const MatD empirical = dc_gain_empirical(net, attacker, detector, cfg);
    MatD expected(f, f);
    for (int r = 0; r < f; ++r)
      for (int c = 0; c < f; ++c) expected(r, c) = kernel.inv(detector[r], attacker[c]);
    const double disc = max_abs_diff(empirical, expected);
    detail::tally(row, disc <= tol, disc);
  }
  result.rows.push_back(std::move(row));
  return result;
}

inline std::string recipe_to_csv(const RecipeResult& r) {
  std::string out = "case,cases,failures,worst_discrepancy\n";
  for (const auto& row : r.rows)
    out += row.case_id + ',' + std::to_string(row.cases) + ',' +
           std::to_string(row.failures) + ',' + format_double(row.worst_discrepancy) +
           '\n';
  return out;
}

}  // namespace adgame
