// Command-line front end: kernels, equilibrium solvers, reproduction sweeps,
// and platoon analysis, with deterministic file outputs.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adgame/adgame.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace adgame;

namespace {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Collects output files plus their digests and writes the run manifest
/// last, so identical runs produce byte-identical directories.
class OutputWriter {
 public:
  OutputWriter(std::string command, fs::path dir) : command_(std::move(command)), dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }

  void input(const std::string& key, const std::string& path) { inputs_[key] = path; }
  void param(const std::string& key, const json& value) { params_[key] = value; }
  void seed(std::uint64_t s) { seed_ = s; }

  void write(const std::string& filename, const std::string& content) {
    write_text_file((dir_ / filename).string(), content);
    outputs_[filename] = fnv1a_hex(content);
  }

  void finish() {
    const json manifest = {{"command", command_}, {"inputs", inputs_},
                           {"parameters", params_}, {"seed", seed_},
                           {"version", kVersion},  {"outputs", outputs_}};
    write_text_file((dir_ / "manifest.json").string(), manifest.dump(2) + "\n");
  }

  const fs::path& dir() const { return dir_; }

 private:
  std::string command_;
  fs::path dir_;
  json inputs_ = json::object();
  json params_ = json::object();
  json outputs_ = json::object();
  std::uint64_t seed_ = 0;
};

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---- kernel ----

int run_kernel(const std::string& network_path, const std::string& method,
               const std::string& out_dir) {
  const auto net = load_network(network_path);
  OutputWriter out("kernel", out_dir);
  out.input("network", network_path);
  out.param("method", method);

  std::vector<GroundedKernel> kernels;
  if (method == "all") {
    kernels.push_back(invert_numeric(grounded_system(net)));
    if (validate_tree(net))
      kernels.push_back(net.mode == Mode::Undirected ? closed_form_undirected(net)
                                                     : closed_form_directed(net));
  } else {
    switch (kernel_method_from_name(method)) {
      case KernelMethod::Numeric:
        kernels.push_back(invert_numeric(grounded_system(net)));
        break;
      case KernelMethod::ClosedFormUndirected:
        kernels.push_back(closed_form_undirected(net));
        break;
      case KernelMethod::ClosedFormDirected:
        kernels.push_back(closed_form_directed(net));
        break;
    }
  }

  for (const auto& k : kernels) {
    const std::string name = kernel_method_name(k.method);
    out.write("kernel_" + name + ".csv", kernel_to_csv(k));
    out.write("kernel_" + name + ".json", json_text(kernel_to_json(k)));
  }

  if (kernels.size() > 1) {
    double disc = 0.0;
    for (std::size_t i = 1; i < kernels.size(); ++i)
      disc = std::max(disc, max_abs_diff(kernels[0].inv, kernels[i].inv));
    out.param("max_discrepancy", disc);
    std::cout << "methods: " << kernels.size() << ", max discrepancy "
              << format_double(disc) << "\n";
  }
  out.finish();
  std::cout << "kernel written to " << out.dir().string() << "\n";
  return 0;
}

// ---- solve ----

void print_report(const EquilibriumReport& r) {
  std::cout << "value: " << format_double(r.value) << "\n";
  for (const auto& s : r.strategies) {
    std::cout << "  " << placement_brief(s) << "\n";
    if (r.strategies.size() > 4) {
      std::cout << "  ... (" << r.strategies.size() << " equilibria)\n";
      break;
    }
  }
  std::cout << "certified by: " << certification_name(r.certified_by)
            << ", evaluations: " << r.evaluations << "\n";
}

int run_solve(const std::string& network_path, int f, const std::string& solver,
              const std::string& out_dir) {
  const auto net = load_network(network_path);
  const auto game = make_game(grounded_kernel(net), f);
  OutputWriter out("solve", out_dir);
  out.input("network", network_path);
  out.param("f", f);
  out.param("solver", solver);

  if (solver == "ne") {
    const auto report = pure_nash_all(game);
    if (!report) {
      const long long n = static_cast<long long>(binomial(game.kernel.size(), f));
      out.write("report.json", json_text(no_equilibrium_json(n * n)));
      out.finish();
      std::cout << "no pure Nash equilibrium (" << n * n << " pairs checked)\n";
      return 0;
    }
    out.write("report.json", json_text(report_to_json(*report)));
    out.finish();
    std::cout << "pure Nash equilibria: " << report->strategies.size() << "\n";
    print_report(*report);
    return 0;
  }

  EquilibriumReport report;
  if (solver == "stackelberg-brute")
    report = stackelberg_bruteforce(game);
  else if (solver == "stackelberg-tree")
    report = stackelberg_tree(game, net);
  else
    throw InvalidInput("unknown solver: " + solver);
  out.write("report.json", json_text(report_to_json(report)));
  out.finish();
  std::cout << "stackelberg equilibrium (" << solver << ")\n";
  print_report(report);
  return 0;
}

// ---- frequency sweep attached to solve ----

int run_freq(const std::string& network_path, int f, double omega_min, double omega_max,
             int points, const std::string& out_dir) {
  const auto net = load_network(network_path);
  const auto game = make_game(grounded_kernel(net), f);
  const auto report =
      validate_tree(net) ? stackelberg_tree(game, net) : stackelberg_bruteforce(game);
  const auto& pair = report.strategies.front();

  if (points <= 0)
    points = static_cast<int>(std::round(61.0 * std::log10(omega_max / omega_min))) + 1;
  const auto sweep =
      frequency_response(net, pair.attacker, pair.detector, log_spaced(omega_min, omega_max, points));

  OutputWriter out("freq", out_dir);
  out.input("network", network_path);
  out.param("f", f);
  out.param("omega_min", omega_min);
  out.param("omega_max", omega_max);
  out.param("points", points);
  out.param("placements", placement_to_json(pair));
  out.write("frequency.csv", frequency_to_csv(sweep));

  double peak = -1.0;
  double peak_at = 0.0;
  for (const auto& [w, g] : sweep)
    if (g > peak) {
      peak = g;
      peak_at = w;
    }
  out.param("peak_omega", peak_at);
  out.param("peak_gain", peak);
  out.finish();
  std::cout << "frequency sweep: " << points << " points, peak gain "
            << format_double(peak) << " at omega " << format_double(peak_at) << "\n";
  return 0;
}

// ---- reproduce ----

int run_reproduce(const std::string& recipe, std::uint64_t seed, int samples, int n_max,
                  int f_max, const std::string& out_dir) {
  RecipeResult result;
  if (recipe == "thm3")
    result = recipe_thm3(seed, n_max ? n_max : 10, samples ? samples : 100);
  else if (recipe == "directed-f1")
    result = recipe_directed_f1(seed, n_max ? n_max : 8, samples ? samples : 500);
  else if (recipe == "alg1-vs-brute")
    result = recipe_alg1_vs_brute(seed, samples ? samples : 200, n_max ? n_max : 10,
                                  f_max ? f_max : 3);
  else if (recipe == "thm6")
    result = recipe_thm6(seed, samples ? samples : 200, n_max ? n_max : 10,
                         f_max ? f_max : 3);
  else if (recipe == "prop1")
    result = recipe_prop1(n_max ? n_max : 12, f_max ? f_max : 4);
  else if (recipe == "prop2")
    result = recipe_prop2(n_max ? n_max : 12, f_max ? f_max : 4);
  else if (recipe == "leader-sweep")
    result = recipe_leader_sweep(4, n_max ? n_max : 12, f_max ? f_max : 3);
  else if (recipe == "dc-gain")
    result = recipe_dc_gain(seed, samples ? samples : 20);
  else
    throw InvalidInput("unknown recipe: " + recipe);

  OutputWriter out("reproduce", out_dir);
  out.seed(seed);
  out.param("recipe", recipe);
  out.param("cases", result.cases());
  out.param("failures", result.failures());
  out.param("worst_discrepancy", result.worst());
  out.write(recipe + ".csv", recipe_to_csv(result));
  out.finish();

  std::cout << recipe << ": " << (result.cases() - result.failures()) << "/"
            << result.cases() << " passed, worst discrepancy "
            << format_double(result.worst()) << "\n";
  return 0;
}

// ---- platoon ----

int run_platoon(const std::string& scenario_path, int f, const std::string& action,
                double dt, double horizon, const std::string& out_dir) {
  const auto scn = load_scenario(scenario_path);
  OutputWriter out("platoon", out_dir);
  out.input("scenario", scenario_path);
  out.param("f", f);
  out.param("action", action);

  if (action == "game") {
    const auto game = platoon_game(scn, f);
    const auto net = platoon_network(scn);
    const auto stack = stackelberg_tree(game, net);
    const auto ne = pure_nash_all(game);

    json doc;
    doc["stackelberg"] = report_to_json(stack);
    doc["pure_nash"] = ne ? report_to_json(*ne) : no_equilibrium_json(0);
    if (scn.leader_position == 0 || scn.leader_position == scn.n - 1) {
      const auto pair = platoon_ne_prediction(scn, f);
      const double violation = saddle_violation(game, pair);
      doc["prediction"] = placement_to_json(pair);
      doc["prediction"]["saddle"] = violation <= kPayoffTol;
      doc["prediction"]["value"] = payoff(game, pair);
    }
    out.write("platoon_game.json", json_text(doc));
    out.finish();
    std::cout << "stackelberg value: " << format_double(stack.value) << "\n";
    std::cout << (ne ? "pure NE exists, value " + format_double(ne->value)
                     : std::string("no pure NE"))
              << "\n";
    return 0;
  }

  if (action == "sweep") {
    const auto entries = leader_placement_sweep(scn.n, f, scn.mode);
    out.write("sweep.csv", sweep_to_csv(entries));
    bool all_ok = true;
    for (const auto& e : entries) all_ok = all_ok && e.boundary_ok;
    out.param("boundary_ok", all_ok);
    out.finish();
    std::cout << "sweep over " << entries.size() << " positions, boundary check "
              << (all_ok ? "passed" : "FAILED") << "\n";
    return 0;
  }

  if (action == "simulate") {
    const auto game = platoon_game(scn, f);
    PlacementPair pair;
    if (scn.leader_position == 0 || scn.leader_position == scn.n - 1)
      pair = platoon_ne_prediction(scn, f);
    else
      pair = stackelberg_tree(game, platoon_network(scn)).strategies.front();

    SimConfig cfg = default_platoon_config(scn);
    if (dt > 0) cfg.dt = dt;
    if (horizon > 0) cfg.horizon = horizon;
    const std::vector<double> w(pair.attacker.size(), 1.0);
    const auto run = simulate_platoon(scn, pair.attacker, pair.detector, w, cfg);

    std::vector<std::string> labels;
    const int m = scn.n - 1;
    for (int i = 0; i < m; ++i)
      labels.push_back("q" + std::to_string(game.kernel.follower_order[i]));
    for (int i = 0; i < m; ++i)
      labels.push_back("r" + std::to_string(game.kernel.follower_order[i]));
    out.write("trajectory.csv", trajectory_to_csv(run.trajectory, labels));

    // settled sensor deviations against the kernel prediction
    json measured = json::array(), predicted = json::array();
    double worst = 0.0;
    for (std::size_t r = 0; r < pair.detector.size(); ++r) {
      const double got = run.position_deviation[pair.detector[r]];
      double want = 0.0;
      for (std::size_t c = 0; c < pair.attacker.size(); ++c)
        want += game.scale * game.kernel.inv(pair.detector[r], pair.attacker[c]) * w[c];
      measured.push_back(got);
      predicted.push_back(want);
      worst = std::max(worst, std::abs(got - want));
    }
    const json dc = {{"max_error", worst},   {"tolerance", 1e-3},
                     {"measured", measured}, {"predicted", predicted},
                     {"pass", worst <= 1e-3}, {"placements", placement_to_json(pair)},
                     {"settled", run.trajectory.settled}};
    out.write("dc_check.json", json_text(dc));
    out.finish();
    std::cout << "dc check: max error " << format_double(worst)
              << (worst <= 1e-3 ? " (pass)" : " (FAIL)") << "\n";
    return 0;
  }

  throw InvalidInput("unknown action: " + action);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attacker-detector placement games on leader-follower networks"};
  app.require_subcommand(1);

  std::string network_path, scenario_path, out_dir = "out";
  std::string method = "all", solver = "stackelberg-tree", recipe, action = "game";
  int f = 1, points = 0, samples = 0, n_max = 0, f_max = 0;
  std::uint64_t seed = 12345;
  double omega_min = 1e-3, omega_max = 1e3, dt = 0.0, horizon = 0.0;

  auto* kernel_cmd = app.add_subcommand("kernel", "compute inverse grounded Laplacians");
  kernel_cmd->add_option("--network", network_path, "network JSON file")->required();
  kernel_cmd->add_option("--method", method, "numeric|lemma2|lemma3|all");
  kernel_cmd->add_option("--out", out_dir, "output directory");

  auto* solve_cmd = app.add_subcommand("solve", "find equilibria of the placement game");
  solve_cmd->add_option("--network", network_path, "network JSON file")->required();
  solve_cmd->add_option("--f", f, "attack/sensor budget");
  solve_cmd->add_option("--solver", solver, "ne|stackelberg-brute|stackelberg-tree")->required();
  solve_cmd->add_option("--out", out_dir, "output directory");

  auto* freq_cmd = app.add_subcommand("freq", "frequency response at equilibrium placements");
  freq_cmd->add_option("--network", network_path, "network JSON file")->required();
  freq_cmd->add_option("--f", f, "attack/sensor budget");
  freq_cmd->add_option("--omega-min", omega_min, "lowest frequency");
  freq_cmd->add_option("--omega-max", omega_max, "highest frequency");
  freq_cmd->add_option("--points", points, "sweep points (0 = 61 per decade)");
  freq_cmd->add_option("--out", out_dir, "output directory");

  auto* repro_cmd = app.add_subcommand("reproduce", "run a validation recipe");
  repro_cmd
      ->add_option("--recipe", recipe,
                   "thm3|directed-f1|alg1-vs-brute|thm6|prop1|prop2|leader-sweep|dc-gain")
      ->required();
  repro_cmd->add_option("--seed", seed, "base RNG seed");
  repro_cmd->add_option("--samples", samples, "sample count (0 = recipe default)");
  repro_cmd->add_option("--n-max", n_max, "largest network size (0 = recipe default)");
  repro_cmd->add_option("--f-max", f_max, "largest budget (0 = recipe default)");
  repro_cmd->add_option("--out", out_dir, "output directory");

  auto* platoon_cmd = app.add_subcommand("platoon", "platoon games, sweeps, simulation");
  platoon_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  platoon_cmd->add_option("--f", f, "attack/sensor budget");
  platoon_cmd->add_option("--action", action, "game|sweep|simulate")->required();
  platoon_cmd->add_option("--dt", dt, "integrator step override");
  platoon_cmd->add_option("--horizon", horizon, "integration horizon override");
  platoon_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (kernel_cmd->parsed()) return run_kernel(network_path, method, out_dir);
    if (solve_cmd->parsed()) return run_solve(network_path, f, solver, out_dir);
    if (freq_cmd->parsed())
      return run_freq(network_path, f, omega_min, omega_max, points, out_dir);
    if (repro_cmd->parsed())
      return run_reproduce(recipe, seed, samples, n_max, f_max, out_dir);
    if (platoon_cmd->parsed())
      return run_platoon(scenario_path, f, action, dt, horizon, out_dir);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
