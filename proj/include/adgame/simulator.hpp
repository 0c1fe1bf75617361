#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "adgame/platoon.hpp"
#include "adgame/spectral.hpp"

namespace adgame {

/// Fixed-step integrator settings. Steady state is declared when the
/// derivative stays below `steady_tol` (infinity norm) for 100 consecutive
/// steps; runs stop there or at `horizon`, whichever comes first.
struct SimConfig {
  double dt = 1e-3;
  double horizon = 50.0;
  double steady_tol = 1e-8;
  double reference_u = 0.0;
};

inline constexpr int kSteadySustainSteps = 100;
inline constexpr double kDivergenceGuard = 1e12;

struct Trajectory {
  std::vector<double> times;                 // sampled grid (decimated)
  std::vector<std::vector<double>> states;   // one state row per sample
  std::vector<std::vector<double>> outputs;  // sensor readings per sample
  std::vector<double> final_state;
  double final_deriv_norm = 0.0;
  bool settled = false;
  long long steps = 0;
};

namespace detail {

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double gershgorin_bound(const MatD& m) {
  double bound = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    bound = std::max(bound, row);
  }
  return std::max(bound, 1e-12);
}

/// Crude smallest-eigenvalue estimate by inverse power iteration; only used
/// to size default horizons.
inline double smallest_eigen_estimate(const MatD& m) {
  const LuFactorization<double> lu(m);
  std::vector<double> x(m.rows(), 1.0);
  double mu = 1.0;
  for (int it = 0; it < 50; ++it) {
    x = lu.solve(x);
    mu = inf_norm(x);
    if (mu <= 0.0) return 1.0;
    for (double& v : x) v /= mu;
  }
  return 1.0 / mu;
}

inline void validate_sim_config(const SimConfig& cfg) {
  if (cfg.dt <= 0.0) throw InvalidInput("SimConfig: dt must be positive");
  if (cfg.horizon < cfg.dt) throw InvalidInput("SimConfig: horizon must be >= dt");
  if (cfg.steady_tol <= 0.0) throw InvalidInput("SimConfig: steady_tol must be positive");
}

/// Classical RK4 with steady-state early exit and deterministic trajectory
/// decimation (at most ~2000 sampled rows).
template <typename Deriv, typename Output>
Trajectory integrate_rk4(Deriv&& deriv, std::vector<double> x, const SimConfig& cfg,
                         Output&& output) {
  validate_sim_config(cfg);
  const std::size_t dim = x.size();
  const long long total = static_cast<long long>(std::ceil(cfg.horizon / cfg.dt));
  const long long stride = std::max<long long>(1, total / 2000);

  Trajectory traj;
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), xt(dim);
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.outputs.push_back(output(x));
  };
  record(0.0);

  int sustained = 0;
  deriv(x, k1);
  for (long long step = 1; step <= total; ++step) {
    const double h = cfg.dt;
    for (std::size_t i = 0; i < dim; ++i) xt[i] = x[i] + 0.5 * h * k1[i];
    deriv(xt, k2);
    for (std::size_t i = 0; i < dim; ++i) xt[i] = x[i] + 0.5 * h * k2[i];
    deriv(xt, k3);
    for (std::size_t i = 0; i < dim; ++i) xt[i] = x[i] + h * k3[i];
    deriv(xt, k4);
    for (std::size_t i = 0; i < dim; ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    traj.steps = step;

    if (inf_norm(x) > kDivergenceGuard)
      throw std::runtime_error("integrate_rk4: state diverged");

    deriv(x, k1);  // reused as next step's k1
    const double dnorm = inf_norm(k1);
    sustained = dnorm < cfg.steady_tol ? sustained + 1 : 0;

    const bool settled = sustained >= kSteadySustainSteps;
    if (step % stride == 0 || step == total || settled) record(step * cfg.dt);
    if (settled) {
      traj.settled = true;
      break;
    }
  }
  deriv(x, k1);
  traj.final_deriv_norm = inf_norm(k1);
  traj.final_state = std::move(x);
  return traj;
}

inline void check_sim_placement(const std::vector<int>& set, int m, const char* who) {
  if (set.empty()) throw InvalidInput(std::string(who) + ": placement is empty");
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] < 0 || set[i] >= m)
      throw InvalidInput(std::string(who) + ": placement index out of range");
    if (i > 0 && set[i] <= set[i - 1])
      throw InvalidInput(std::string(who) + ": placement must be strictly increasing");
  }
}

}  // namespace detail

/// Spec-style defaults: dt from a Gershgorin bound on the fastest mode,
/// horizon from an estimate of the slowest.
inline SimConfig default_sim_config(const GroundedSystem& sys) {
  SimConfig cfg;
  const double lmax = detail::gershgorin_bound(sys.lg);
  const double lmin = detail::smallest_eigen_estimate(sys.lg);
  cfg.dt = 1e-3 / lmax;
  cfg.horizon = 50.0 / lmin;
  return cfg;
}

/// Integrate the leader-follower consensus dynamics
///   x' = -Lg x + a u + B w
/// from x(0) = 0 with constant reference u and constant attack w, where a is
/// the leader coupling. Attacker/detector entries are kernel positions
/// (indices into the grounded system's follower order).
inline Trajectory simulate_first_order(const LeaderNetwork& net,
                                       const std::vector<int>& attacker,
                                       const std::vector<int>& detector,
                                       const std::vector<double>& w_const,
                                       const SimConfig& cfg) {
  const auto sys = grounded_system(net);
  const int m = sys.lg.rows();
  detail::check_sim_placement(attacker, m, "simulate_first_order(attacker)");
  detail::check_sim_placement(detector, m, "simulate_first_order(detector)");
  if (w_const.size() != attacker.size())
    throw InvalidInput("simulate_first_order: w must have one entry per attacker");

  std::vector<double> force(m, 0.0);
  for (int i = 0; i < m; ++i) force[i] = -sys.l12[i] * cfg.reference_u;
  for (std::size_t k = 0; k < attacker.size(); ++k) force[attacker[k]] += w_const[k];

  auto deriv = [&](const std::vector<double>& x, std::vector<double>& dx) {
    for (int i = 0; i < m; ++i) {
      double acc = force[i];
      for (int j = 0; j < m; ++j) acc -= sys.lg(i, j) * x[j];
      dx[i] = acc;
    }
  };
  auto output = [&](const std::vector<double>& x) {
    std::vector<double> y(detector.size());
    for (std::size_t r = 0; r < detector.size(); ++r) y[r] = x[detector[r]];
    return y;
  };
  return detail::integrate_rk4(deriv, std::vector<double>(m, 0.0), cfg, output);
}

/// Recover the DC gain matrix empirically: column k is the settled sensor
/// output under a unit constant attack at the k-th attacker node (reference
/// input held at zero).
inline MatD dc_gain_empirical(const LeaderNetwork& net, const std::vector<int>& attacker,
                              const std::vector<int>& detector, const SimConfig& cfg) {
  MatD gain(static_cast<int>(detector.size()), static_cast<int>(attacker.size()));
  SimConfig run_cfg = cfg;
  run_cfg.reference_u = 0.0;
  for (std::size_t k = 0; k < attacker.size(); ++k) {
    std::vector<double> w(attacker.size(), 0.0);
    w[k] = 1.0;
    const auto traj = simulate_first_order(net, attacker, detector, w, run_cfg);
    if (!traj.settled)
      throw std::runtime_error("dc_gain_empirical: no steady state within horizon");
    for (std::size_t r = 0; r < detector.size(); ++r)
      gain(static_cast<int>(r), static_cast<int>(k)) = traj.final_state[detector[r]];
  }
  return gain;
}

inline std::vector<double> log_spaced(double lo, double hi, int points) {
  if (lo <= 0.0 || hi < lo || points < 2)
    throw InvalidInput("log_spaced: need 0 < lo <= hi and points >= 2");
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo * std::exp(step * i);
  return out;
}

/// Largest singular value of C (jwI + Lg)^-1 B over a list of frequencies.
inline std::vector<std::pair<double, double>> frequency_response(
    const LeaderNetwork& net, const std::vector<int>& attacker,
    const std::vector<int>& detector, const std::vector<double>& omegas) {
  const auto sys = grounded_system(net);
  const int m = sys.lg.rows();
  detail::check_sim_placement(attacker, m, "frequency_response(attacker)");
  detail::check_sim_placement(detector, m, "frequency_response(detector)");

  std::vector<std::pair<double, double>> out;
  out.reserve(omegas.size());
  for (double omega : omegas) {
    if (omega < 0.0) throw InvalidInput("frequency_response: omega must be >= 0");
    MatC a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        a(i, j) = {sys.lg(i, j), i == j ? omega : 0.0};
    MatC b(m, static_cast<int>(attacker.size()));
    for (std::size_t k = 0; k < attacker.size(); ++k)
      b(attacker[k], static_cast<int>(k)) = {1.0, 0.0};
    const MatC x = LuFactorization<std::complex<double>>(a).solve(b);
    MatC sub(static_cast<int>(detector.size()), b.cols());
    for (std::size_t r = 0; r < detector.size(); ++r)
      for (int c = 0; c < b.cols(); ++c) sub(static_cast<int>(r), c) = x(detector[r], c);
    out.emplace_back(omega, sigma_max(sub));
  }
  return out;
}

/// Result of a platoon run. Deviations are measured at the final state
/// against the nominal formation: position deviations settle to
/// (1/k_p) Lg^-1 B w under a constant attack, velocity deviations to zero.
struct PlatoonRun {
  Trajectory trajectory;
  std::vector<double> position_deviation;
  std::vector<double> velocity_deviation;
};

inline SimConfig default_platoon_config(const PlatoonScenario& scn) {
  const auto sys = grounded_system(platoon_network(scn));
  const double lmax = detail::gershgorin_bound(sys.lg);
  const double lmin = detail::smallest_eigen_estimate(sys.lg);
  SimConfig cfg;
  cfg.dt = 1e-3 / std::max(1.0, (scn.k_p + scn.k_u) * lmax);
  const double rate = std::min(0.5 * scn.k_u * lmin, scn.k_p / scn.k_u);
  cfg.horizon = 50.0 / std::max(rate, 1e-6);
  return cfg;
}

/// Integrate the second-order cooperative cruise dynamics in leader-relative
/// coordinates (q = position offset to the leader, r = velocity offset):
///   q' = r,   r' = -k_p Lg q - k_u Lg r + k_p D + B w
/// with D the followers' spacing offsets. The leader cruises at
/// cfg.reference_u; followers start co-located with it at rest. Logged
/// states are [q..., r...]; outputs are the measured absolute velocities at
/// the detector nodes.
inline PlatoonRun simulate_platoon(const PlatoonScenario& scn,
                                   const std::vector<int>& attacker,
                                   const std::vector<int>& detector,
                                   const std::vector<double>& w_const,
                                   const SimConfig& cfg) {
  const auto net = platoon_network(scn);
  const auto sys = grounded_system(net);
  const int m = sys.lg.rows();
  detail::check_sim_placement(attacker, m, "simulate_platoon(attacker)");
  detail::check_sim_placement(detector, m, "simulate_platoon(detector)");
  if (w_const.size() != attacker.size())
    throw InvalidInput("simulate_platoon: w must have one entry per attacker");

  std::vector<double> spacing_f(m, 0.0);
  if (!scn.spacing.empty())
    for (int i = 0; i < m; ++i) spacing_f[i] = scn.spacing[sys.follower_order[i]];

  std::vector<double> force(m, 0.0);
  for (int i = 0; i < m; ++i) force[i] = scn.k_p * spacing_f[i];
  for (std::size_t k = 0; k < attacker.size(); ++k) force[attacker[k]] += w_const[k];

  auto deriv = [&](const std::vector<double>& x, std::vector<double>& dx) {
    // x = [q(0..m-1), r(0..m-1)]
    for (int i = 0; i < m; ++i) dx[i] = x[m + i];
    for (int i = 0; i < m; ++i) {
      double acc = force[i];
      for (int j = 0; j < m; ++j)
        acc -= sys.lg(i, j) * (scn.k_p * x[j] + scn.k_u * x[m + j]);
      dx[m + i] = acc;
    }
  };
  auto output = [&](const std::vector<double>& x) {
    std::vector<double> y(detector.size());
    for (std::size_t r = 0; r < detector.size(); ++r)
      y[r] = x[m + detector[r]] + cfg.reference_u;
    return y;
  };

  std::vector<double> x0(2 * m, 0.0);
  for (int i = 0; i < m; ++i) x0[m + i] = -cfg.reference_u;

  PlatoonRun run;
  run.trajectory = detail::integrate_rk4(deriv, std::move(x0), cfg, output);
  if (!run.trajectory.settled)
    throw std::runtime_error("simulate_platoon: no steady state within horizon");

  // Nominal formation offsets: Lg z = spacing offsets.
  const auto nominal = LuFactorization<double>(sys.lg).solve(spacing_f);
  run.position_deviation.resize(m);
  run.velocity_deviation.resize(m);
  for (int i = 0; i < m; ++i) {
    run.position_deviation[i] = run.trajectory.final_state[i] - nominal[i];
    run.velocity_deviation[i] = run.trajectory.final_state[m + i];
  }
  return run;
}

}  // namespace adgame
