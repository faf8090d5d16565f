#pragma once

#include <string_view>
#include <vector>

#include "oscsync/network.hpp"

namespace oscsync {

// Fixed-step integration parameters. Build through make_sim_config, which
// clamps dt so that dt * omega_max <= 0.05 for the network's stiffest mode.
struct SimConfig {
  double dt;
  double t_end;
  int record_stride;
};

// Largest natural frequency of the pencil (Ka, Ma), i.e. sqrt(max eig of R).
double max_pencil_frequency(const NetworkSpec& net);

// dt_request <= 0 selects the default step. Throws on nonpositive t_end or
// record_stride, or when t_end < the resulting dt.
SimConfig make_sim_config(const NetworkSpec& net, double dt_request = 0.0,
                          double t_end = 2000.0, int record_stride = 1);

struct Trajectory {
  std::vector<double> times;
  std::vector<rvec> positions;
  std::vector<rvec> velocities;
  std::vector<double> energy;        // V(t) at recorded samples
  std::vector<double> disagreement;  // max_i x_i - min_i x_i
  double omega0;
  double initial_energy;
  // worst V(t+dt) - V(t) over every integration step, recorded or not
  double max_energy_step_increase;
};

// V = 0.5 x^T Ka x + 0.5 v^T Ma v; nonnegative and nonincreasing along
// solutions.
double energy(const NetworkSpec& net, const rvec& x, const rvec& v);

// Largest pairwise position gap, max(x) - min(x).
double disagreement(const rvec& x);

// Classical fixed-step fourth-order Runge-Kutta on (x, v)' = (v, -Ma^{-1}(Bv + Ka x)).
// Ma is factored once and reused. Throws divergence_error on non-finite state.
Trajectory simulate(const NetworkSpec& net, const rvec& x0, const rvec& v0,
                    const SimConfig& cfg);

enum class TrajectoryClass { sync_trending, persistent, inconclusive };
std::string_view trajectory_class_name(TrajectoryClass c);

// Compares the peak disagreement over the final quarter of the horizon with
// the first quarter: <= 0.5x is sync_trending, >= 0.9x is persistent.
// Requires the horizon to cover at least 20 uncoupled periods.
TrajectoryClass classify_trajectory(const Trajectory& traj);

}  // namespace oscsync
