#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adgame/game.hpp"
#include "adgame/platoon.hpp"
#include "adgame/simulator.hpp"

namespace adgame {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << content;
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(what + ": JSON parse error: " + e.what());
  }
}

// ---- networks ----

inline nlohmann::json network_to_json(const LeaderNetwork& net) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : net.edges) edges.push_back({u, v});
  return {{"n", net.node_count},
          {"leader", net.leader},
          {"mode", mode_name(net.mode)},
          {"edges", edges}};
}

inline LeaderNetwork network_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int leader = j.at("leader").get<int>();
    const Mode mode = mode_from_name(j.at("mode").get<std::string>());
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw InvalidInput("network JSON: each edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return build_network(n, std::move(edges), mode, leader);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("network JSON: ") + e.what());
  }
}

inline LeaderNetwork load_network(const std::string& path) {
  return network_from_json(parse_json(read_text_file(path), path));
}

// ---- platoon scenarios ----

inline nlohmann::json scenario_to_json(const PlatoonScenario& scn) {
  return {{"n", scn.n},
          {"leader_position", scn.leader_position},
          {"mode", mode_name(scn.mode)},
          {"k_p", scn.k_p},
          {"k_u", scn.k_u},
          {"spacing", scn.spacing}};
}

inline PlatoonScenario scenario_from_json(const nlohmann::json& j) {
  try {
    PlatoonScenario scn;
    scn.n = j.at("n").get<int>();
    scn.leader_position = j.at("leader_position").get<int>();
    scn.mode = mode_from_name(j.at("mode").get<std::string>());
    scn.k_p = j.at("k_p").get<double>();
    scn.k_u = j.at("k_u").get<double>();
    if (j.contains("spacing")) scn.spacing = j.at("spacing").get<std::vector<double>>();
    validate_scenario(scn);
    return scn;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("scenario JSON: ") + e.what());
  }
}

inline PlatoonScenario load_scenario(const std::string& path) {
  return scenario_from_json(parse_json(read_text_file(path), path));
}

// ---- kernels ----

inline nlohmann::json kernel_to_json(const GroundedKernel& k) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < k.inv.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < k.inv.cols(); ++j) row.push_back(k.inv(i, j));
    rows.push_back(std::move(row));
  }
  return {{"order", k.follower_order},
          {"method", kernel_method_name(k.method)},
          {"matrix", rows}};
}

inline std::string kernel_to_csv(const GroundedKernel& k) {
  std::string out;
  for (int i = 0; i < k.inv.rows(); ++i) {
    for (int j = 0; j < k.inv.cols(); ++j) {
      if (j) out += ',';
      out += format_double(k.inv(i, j));
    }
    out += '\n';
  }
  return out;
}

// ---- equilibrium reports ----

inline nlohmann::json placement_to_json(const PlacementPair& p) {
  return {{"attacker", p.attacker}, {"detector", p.detector}};
}

inline nlohmann::json report_to_json(const EquilibriumReport& r) {
  nlohmann::json strategies = nlohmann::json::array();
  for (const auto& s : r.strategies) strategies.push_back(placement_to_json(s));
  nlohmann::json j = {{"kind", equilibrium_kind_name(r.kind)},
                      {"value", r.value},
                      {"strategies", std::move(strategies)},
                      {"certified_by", certification_name(r.certified_by)},
                      {"evaluations", r.evaluations}};
  if (r.kind == EquilibriumKind::PureNash) j["exists"] = true;
  return j;
}

/// Report emitted when the exhaustive pure-Nash search comes back empty;
/// absence is a result, not an error.
inline nlohmann::json no_equilibrium_json(long long evaluations) {
  return {{"kind", "pure_nash"},
          {"exists", false},
          {"strategies", nlohmann::json::array()},
          {"certified_by", "saddle_check"},
          {"evaluations", evaluations}};
}

// ---- CSV emitters ----

inline std::string placement_brief(const PlacementPair& p) {
  std::string s = "det=";
  for (std::size_t i = 0; i < p.detector.size(); ++i)
    s += (i ? " " : "") + std::to_string(p.detector[i]);
  s += "|att=";
  for (std::size_t i = 0; i < p.attacker.size(); ++i)
    s += (i ? " " : "") + std::to_string(p.attacker[i]);
  return s;
}

inline std::string sweep_to_csv(const std::vector<SweepEntry>& entries) {
  std::string out = "position,value,ne_exists,strategies\n";
  for (const auto& e : entries) {
    out += std::to_string(e.position) + ',' + format_double(e.value) + ',' +
           (e.ne_exists ? '1' : '0') + ',' + placement_brief(e.strategy) + '\n';
  }
  return out;
}

inline std::string trajectory_to_csv(const Trajectory& traj,
                                     const std::vector<std::string>& state_labels = {},
                                     const std::vector<std::string>& output_labels = {}) {
  const std::size_t dim = traj.states.empty() ? 0 : traj.states.front().size();
  const std::size_t outs = traj.outputs.empty() ? 0 : traj.outputs.front().size();
  std::string out = "t";
  for (std::size_t i = 0; i < dim; ++i)
    out += ',' + (i < state_labels.size() ? state_labels[i] : "x" + std::to_string(i));
  for (std::size_t i = 0; i < outs; ++i)
    out += ',' + (i < output_labels.size() ? output_labels[i] : "y" + std::to_string(i));
  out += '\n';
  for (std::size_t row = 0; row < traj.times.size(); ++row) {
    out += format_double(traj.times[row]);
    for (double v : traj.states[row]) out += ',' + format_double(v);
    for (double v : traj.outputs[row]) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

inline std::string frequency_to_csv(const std::vector<std::pair<double, double>>& sweep) {
  std::string out = "omega,gain\n";
  for (const auto& [omega, gain] : sweep)
    out += format_double(omega) + ',' + format_double(gain) + '\n';
  return out;
}

}  // namespace adgame
