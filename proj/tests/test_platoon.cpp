#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "adgame/io.hpp"
#include "adgame/platoon.hpp"
#include "adgame/recipes.hpp"

using namespace adgame;

namespace {

PlatoonScenario line(int n, int leader, Mode mode, double k_p = 1.0, double k_u = 1.0) {
  PlatoonScenario scn;
  scn.n = n;
  scn.leader_position = leader;
  scn.mode = mode;
  scn.k_p = k_p;
  scn.k_u = k_u;
  return scn;
}

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("scenario validation") {
  REQUIRE_THROWS_AS(validate_scenario(line(1, 0, Mode::Undirected)), InvalidInput);
  REQUIRE_THROWS_AS(validate_scenario(line(4, 7, Mode::Undirected)), InvalidInput);
  REQUIRE_THROWS_AS(validate_scenario(line(4, 0, Mode::Undirected, -1.0)), InvalidInput);
  auto scn = line(4, 0, Mode::Undirected);
  scn.spacing = {1.0, 2.0};  // wrong length
  REQUIRE_THROWS_AS(validate_scenario(scn), InvalidInput);
}

TEST_CASE("unit-gain platoon game matches the consensus path game") {
  const auto scn = line(5, 0, Mode::Undirected, 1.0, 2.0);
  const auto pg = platoon_game(scn, 1);
  const auto net = generate(GraphKind::Path, 5, 0, Mode::Undirected);
  const auto cg = make_game(closed_form_undirected(net), 1);
  REQUIRE(max_abs_diff(pg.kernel.inv, cg.kernel.inv) == 0.0);
  REQUIRE(pg.scale == 1.0);
  for (int d = 0; d < 4; ++d)
    REQUIRE(payoff(pg, {{0}, {d}}) == payoff(cg, {{0}, {d}}));
}

TEST_CASE("doubling k_p halves every payoff and value, strategies unchanged") {
  const auto base = platoon_game(line(6, 0, Mode::Undirected, 1.0), 2);
  const auto halved = platoon_game(line(6, 0, Mode::Undirected, 2.0), 2);
  REQUIRE(payoff(halved, {{0, 1}, {3, 4}}) ==
          Catch::Approx(0.5 * payoff(base, {{0, 1}, {3, 4}})).margin(1e-12));

  const auto ne_base = pure_nash_all(base);
  const auto ne_halved = pure_nash_all(halved);
  REQUIRE(ne_base.has_value());
  REQUIRE(ne_halved.has_value());
  REQUIRE(ne_halved->value == Catch::Approx(0.5 * ne_base->value).margin(1e-9));
  REQUIRE(ne_base->strategies.size() == ne_halved->strategies.size());
  for (std::size_t i = 0; i < ne_base->strategies.size(); ++i) {
    REQUIRE(ne_base->strategies[i].attacker == ne_halved->strategies[i].attacker);
    REQUIRE(ne_base->strategies[i].detector == ne_halved->strategies[i].detector);
  }
}

TEST_CASE("directed platoon equilibrium value is the triangular-block gain") {
  // 4 followers, f=2: the equilibrium submatrix is the unit lower triangle
  // [[1,0],[1,1]], whose largest singular value is the golden ratio
  const auto game = platoon_game(line(5, 0, Mode::Directed, 1.0), 2);
  const auto ne = pure_nash_all(game);
  REQUIRE(ne.has_value());
  REQUIRE(ne->value == Catch::Approx(kGolden).margin(1e-9));
  REQUIRE(stackelberg_bruteforce(game).value == Catch::Approx(kGolden).margin(1e-9));

  const auto scaled = platoon_game(line(5, 0, Mode::Directed, 2.0), 2);
  REQUIRE(pure_nash_all(scaled)->value == Catch::Approx(kGolden / 2.0).margin(1e-9));
}

TEST_CASE("platoon_ne_prediction places per the line structure") {
  const auto und = platoon_ne_prediction(line(6, 0, Mode::Undirected), 2);
  REQUIRE(und.attacker == std::vector<int>{0, 1});
  REQUIRE(und.detector == std::vector<int>{3, 4});

  const auto dir = platoon_ne_prediction(line(6, 0, Mode::Directed), 2);
  REQUIRE(dir.attacker == std::vector<int>{3, 4});
  REQUIRE(dir.detector == std::vector<int>{3, 4});

  // leader at the far end: kernel positions flip
  const auto far = platoon_ne_prediction(line(6, 5, Mode::Undirected), 2);
  REQUIRE(far.attacker == std::vector<int>{3, 4});
  REQUIRE(far.detector == std::vector<int>{0, 1});

  // f = n-1 forces both players onto every follower
  const auto all = platoon_ne_prediction(line(5, 0, Mode::Undirected), 4);
  REQUIRE(all.attacker == std::vector<int>{0, 1, 2, 3});
  REQUIRE(all.detector == std::vector<int>{0, 1, 2, 3});

  REQUIRE_THROWS_AS(platoon_ne_prediction(line(6, 2, Mode::Undirected), 2), InvalidInput);
  REQUIRE_THROWS_AS(platoon_ne_prediction(line(6, 0, Mode::Undirected), 6), InvalidInput);
}

TEST_CASE("predicted placements are saddle points") {
  REQUIRE(recipe_prop1(8, 3).passed());
  REQUIRE(recipe_prop2(8, 3).passed());
}

TEST_CASE("undirected platoons are at least as secure as directed ones") {
  for (int n = 3; n <= 8; ++n) {
    for (int f = 1; f <= std::min(3, n - 1); ++f) {
      const auto und = pure_nash_all(platoon_game(line(n, 0, Mode::Undirected), f));
      const auto dir = pure_nash_all(platoon_game(line(n, 0, Mode::Directed), f));
      REQUIRE(und.has_value());
      REQUIRE(dir.has_value());
      REQUIRE(und->value >= dir->value - kPayoffTol);
    }
  }
}

TEST_CASE("leader placement sweep on a 6-vehicle line, f=1") {
  const auto entries = leader_placement_sweep(6, 1, Mode::Undirected);
  REQUIRE(entries.size() == 6);
  REQUIRE(entries.front().value == 1.0);
  REQUIRE(entries.back().value == 1.0);
  for (const auto& e : entries) {
    REQUIRE(e.boundary_ok);
    const bool at_end = e.position == 0 || e.position == 5;
    REQUIRE(e.ne_exists == at_end);
    if (!at_end) REQUIRE(e.value == 0.0);  // interior leader splits the kernel
  }
}

TEST_CASE("three vehicles, interior leader: no equilibrium, zero value") {
  const auto entries = leader_placement_sweep(3, 1, Mode::Undirected);
  REQUIRE_FALSE(entries[1].ne_exists);
  REQUIRE(entries[1].value == 0.0);
  REQUIRE(entries[1].boundary_ok);
}

TEST_CASE("sweep values agree with brute force") {
  const auto entries = leader_placement_sweep(7, 2, Mode::Undirected);
  for (const auto& e : entries) {
    const auto net = generate(GraphKind::Platoon, 7, e.position, Mode::Undirected);
    const auto brute = stackelberg_bruteforce(make_game(grounded_kernel(net), 2));
    REQUIRE(e.value == Catch::Approx(brute.value).margin(1e-9));
  }
}

TEST_CASE("interior positions never beat the ends") {
  REQUIRE(recipe_leader_sweep(4, 9, 3).passed());
}

TEST_CASE("scenario JSON round trip") {
  auto scn = line(5, 4, Mode::Directed, 2.0, 0.5);
  scn.spacing = {0.0, -1.0, -2.0, -3.0, -4.0};
  const auto back = scenario_from_json(scenario_to_json(scn));
  REQUIRE(back.n == scn.n);
  REQUIRE(back.leader_position == scn.leader_position);
  REQUIRE(back.mode == scn.mode);
  REQUIRE(back.k_p == scn.k_p);
  REQUIRE(back.k_u == scn.k_u);
  REQUIRE(back.spacing == scn.spacing);

  REQUIRE_THROWS_AS(scenario_from_json(nlohmann::json{{"n", 4}}), InvalidInput);
}
