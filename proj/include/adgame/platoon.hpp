#pragma once

#include <algorithm>
#include <vector>

#include "adgame/game.hpp"

namespace adgame {

/// A platoon of n vehicles on a line. The leader holds `leader_position`;
/// directed mode is the predecessor-following architecture, every edge
/// oriented away from the leader. `spacing` holds the per-vehicle aggregated
/// desired-gap offsets (one entry per vehicle; empty means all zero). The
/// gains shape the dynamics only: the zero-frequency game payoff depends on
/// k_p alone.
struct PlatoonScenario {
  int n = 2;
  int leader_position = 0;
  Mode mode = Mode::Undirected;
  double k_p = 1.0;
  double k_u = 1.0;
  std::vector<double> spacing;
};

inline void validate_scenario(const PlatoonScenario& scn) {
  if (scn.n < 2) throw InvalidInput("platoon: need at least 2 vehicles");
  if (scn.leader_position < 0 || scn.leader_position >= scn.n)
    throw InvalidInput("platoon: leader position out of range");
  if (scn.k_p <= 0.0 || scn.k_u <= 0.0)
    throw InvalidInput("platoon: gains k_p and k_u must be positive");
  if (!scn.spacing.empty() && static_cast<int>(scn.spacing.size()) != scn.n)
    throw InvalidInput("platoon: spacing must have one entry per vehicle");
}

inline LeaderNetwork platoon_network(const PlatoonScenario& scn) {
  validate_scenario(scn);
  return generate(GraphKind::Platoon, scn.n, scn.leader_position, scn.mode);
}

/// The placement game over the platoon's kernel, payoffs scaled by 1/k_p.
inline GameInstance platoon_game(const PlatoonScenario& scn, int f) {
  const auto net = platoon_network(scn);
  return make_game(grounded_kernel(net), f, 1.0 / scn.k_p);
}

/// Predicted pure-Nash placements for a platoon whose leader sits at an end
/// of the line: undirected, the attacker takes the f followers closest to
/// the leader and the detector the f farthest; directed, both take the f
/// farthest. Positions are kernel indices.
inline PlacementPair platoon_ne_prediction(const PlatoonScenario& scn, int f) {
  validate_scenario(scn);
  if (scn.leader_position != 0 && scn.leader_position != scn.n - 1)
    throw InvalidInput("platoon_ne_prediction: requires the leader at an end of the line");
  if (f < 1 || f > scn.n - 1)
    throw InvalidInput("platoon_ne_prediction: f out of range");

  const auto net = platoon_network(scn);
  const auto kernel = grounded_kernel(net);
  const auto dist = leader_distances(net);

  std::vector<int> by_distance(kernel.size());
  for (int p = 0; p < kernel.size(); ++p) by_distance[p] = p;
  std::sort(by_distance.begin(), by_distance.end(), [&](int a, int b) {
    return dist[kernel.follower_order[a]] < dist[kernel.follower_order[b]];
  });

  std::vector<int> closest(by_distance.begin(), by_distance.begin() + f);
  std::vector<int> farthest(by_distance.end() - f, by_distance.end());
  std::sort(closest.begin(), closest.end());
  std::sort(farthest.begin(), farthest.end());

  PlacementPair pair;
  pair.detector = farthest;
  pair.attacker = scn.mode == Mode::Undirected ? closest : farthest;
  return pair;
}

/// One leader position of a placement sweep. `boundary_ok` asserts that this
/// position's Stackelberg value does not exceed the end-of-line values
/// (trivially true at the ends themselves).
struct SweepEntry {
  int position = 0;
  double value = 0.0;
  bool ne_exists = false;
  PlacementPair strategy;
  bool boundary_ok = true;
};

/// Stackelberg value (unit scale) for every leader position along a line of
/// n vehicles, plus pure-NE existence per position.
inline std::vector<SweepEntry> leader_placement_sweep(int n, int f, Mode mode) {
  if (n < 3) throw InvalidInput("leader_placement_sweep: need at least 3 vehicles");
  if (f < 1 || f > n - 1) throw InvalidInput("leader_placement_sweep: f out of range");

  std::vector<SweepEntry> entries;
  entries.reserve(n);
  for (int pos = 0; pos < n; ++pos) {
    const auto net = generate(GraphKind::Platoon, n, pos, mode);
    const auto game = make_game(grounded_kernel(net), f);
    const auto report = stackelberg_tree(game, net);
    SweepEntry e;
    e.position = pos;
    e.value = report.value;
    e.ne_exists = pure_nash_all(game).has_value();
    e.strategy = report.strategies.front();
    entries.push_back(std::move(e));
  }
  const double end_value = std::min(entries.front().value, entries.back().value);
  for (auto& e : entries)
    e.boundary_ok = e.position == 0 || e.position == n - 1 ||
                    e.value <= end_value + kPayoffTol;
  return entries;
}

}  // namespace adgame
