#include "oscsync/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oscsync {

namespace {

constexpr double kStepFrequencyCap = 0.05;  // dt * omega_max bound

Mat spd_inverse(const Mat& a) {
  const SymEig e = sym_eig(a);
  const int n = a.rows();
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += e.vectors(i, k) * e.vectors(j, k) / e.values[k];
      inv(i, j) = inv(j, i) = acc;
    }
  return inv;
}

}  // namespace

double max_pencil_frequency(const NetworkSpec& net) {
  const Mat mis = spd_inv_sqrt(net.ma());
  Mat r = mis * net.ka() * mis;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = i + 1; j < r.cols(); ++j) r(i, j) = r(j, i) = 0.5 * (r(i, j) + r(j, i));
  const SymEig e = sym_eig(r);
  return std::sqrt(std::max(e.values.back(), 0.0));
}

SimConfig make_sim_config(const NetworkSpec& net, double dt_request, double t_end,
                          int record_stride) {
  if (!(t_end > 0.0)) throw std::invalid_argument("make_sim_config: t_end must be > 0");
  if (record_stride < 1)
    throw std::invalid_argument("make_sim_config: record_stride must be >= 1");
  if (dt_request < 0.0 || !std::isfinite(dt_request))
    throw std::invalid_argument("make_sim_config: dt must be finite and >= 0");

  const double omega_max = max_pencil_frequency(net);
  const double dt_cap = kStepFrequencyCap / omega_max;
  double dt = (dt_request > 0.0) ? std::min(dt_request, dt_cap) : dt_cap;
  if (dt > t_end) throw std::invalid_argument("make_sim_config: dt exceeds t_end");
  return {dt, t_end, record_stride};
}

double energy(const NetworkSpec& net, const rvec& x, const rvec& v) {
  if (static_cast<int>(x.size()) != net.q || static_cast<int>(v.size()) != net.q)
    throw dimension_error("energy: state size does not match network");
  const rvec kx = net.ka() * x;
  const rvec mv = net.ma() * v;
  return 0.5 * dot(x, kx) + 0.5 * dot(v, mv);
}

double disagreement(const rvec& x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

Trajectory simulate(const NetworkSpec& net, const rvec& x0, const rvec& v0,
                    const SimConfig& cfg) {
  const int q = net.q;
  if (static_cast<int>(x0.size()) != q || static_cast<int>(v0.size()) != q)
    throw dimension_error("simulate: initial state size does not match network");
  if (!(cfg.dt > 0.0) || !(cfg.t_end >= cfg.dt) || cfg.record_stride < 1)
    throw std::invalid_argument("simulate: invalid SimConfig");
  if (cfg.dt * max_pencil_frequency(net) > kStepFrequencyCap * (1.0 + 1e-12))
    throw std::invalid_argument("simulate: dt violates the step-frequency cap");

  const Mat ma = net.ma();
  const Mat ka = net.ka();
  const Mat b = laplacian(net.dissipative);
  const Mat ma_inv = spd_inverse(ma);
  const Mat av = ma_inv * b;   // velocity feedback
  const Mat ax = ma_inv * ka;  // position feedback

  auto accel = [&](const rvec& x, const rvec& v, rvec& out) {
    for (int i = 0; i < q; ++i) {
      double s = 0.0;
      for (int j = 0; j < q; ++j) s += av(i, j) * v[j] + ax(i, j) * x[j];
      out[i] = -s;
    }
  };

  const long n_steps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9));

  Trajectory traj;
  traj.omega0 = std::sqrt(net.omega0_sq());
  traj.initial_energy = energy(net, x0, v0);
  traj.max_energy_step_increase = 0.0;
  const size_t approx = static_cast<size_t>(n_steps / cfg.record_stride) + 2;
  traj.times.reserve(approx);
  traj.positions.reserve(approx);
  traj.velocities.reserve(approx);
  traj.energy.reserve(approx);
  traj.disagreement.reserve(approx);

  rvec x = x0, v = v0;
  rvec k1x(q), k1v(q), k2x(q), k2v(q), k3x(q), k3v(q), k4x(q), k4v(q);
  rvec xt(q), vt(q);

  auto record = [&](double t, double vnow) {
    traj.times.push_back(t);
    traj.positions.push_back(x);
    traj.velocities.push_back(v);
    traj.energy.push_back(vnow);
    traj.disagreement.push_back(disagreement(x));
  };

  double v_prev = traj.initial_energy;
  record(0.0, v_prev);

  double t = 0.0;
  for (long step = 0; step < n_steps; ++step) {
    double h = cfg.dt;
    if (t + h > cfg.t_end) h = cfg.t_end - t;  // land exactly on the horizon

    k1x = v;
    accel(x, v, k1v);
    for (int i = 0; i < q; ++i) {
      xt[i] = x[i] + 0.5 * h * k1x[i];
      vt[i] = v[i] + 0.5 * h * k1v[i];
    }
    k2x = vt;
    accel(xt, vt, k2v);
    for (int i = 0; i < q; ++i) {
      xt[i] = x[i] + 0.5 * h * k2x[i];
      vt[i] = v[i] + 0.5 * h * k2v[i];
    }
    k3x = vt;
    accel(xt, vt, k3v);
    for (int i = 0; i < q; ++i) {
      xt[i] = x[i] + h * k3x[i];
      vt[i] = v[i] + h * k3v[i];
    }
    k4x = vt;
    accel(xt, vt, k4v);
    for (int i = 0; i < q; ++i) {
      x[i] += h / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
      v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    t += h;

    for (int i = 0; i < q; ++i) {
      if (!std::isfinite(x[i]) || !std::isfinite(v[i])) {
        std::ostringstream msg;
        msg << "simulate: non-finite state at t=" << t << " (dt=" << cfg.dt
            << " too large)";
        throw divergence_error(msg.str());
      }
    }

    const double v_now = energy(net, x, v);
    traj.max_energy_step_increase =
        std::max(traj.max_energy_step_increase, v_now - v_prev);
    v_prev = v_now;

    if ((step + 1) % cfg.record_stride == 0 || step + 1 == n_steps) record(t, v_now);
  }
  return traj;
}

std::string_view trajectory_class_name(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::sync_trending: return "sync_trending";
    case TrajectoryClass::persistent: return "persistent";
    case TrajectoryClass::inconclusive: return "inconclusive";
  }
  return "?";
}

TrajectoryClass classify_trajectory(const Trajectory& traj) {
  if (traj.times.empty()) throw std::invalid_argument("classify_trajectory: empty trajectory");
  const double t_end = traj.times.back();
  const double period = 2.0 * M_PI / traj.omega0;
  if (t_end < 20.0 * period)
    throw std::invalid_argument(
        "classify_trajectory: horizon shorter than 20 uncoupled periods");

  double w_early = 0.0, w_late = 0.0, amp = 0.0;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] <= 0.25 * t_end) w_early = std::max(w_early, traj.disagreement[k]);
    if (traj.times[k] >= 0.75 * t_end) w_late = std::max(w_late, traj.disagreement[k]);
    for (double xi : traj.positions[k]) amp = std::max(amp, std::abs(xi));
  }
  // disagreement at integration-noise level counts as zero, so exact
  // consensus classifies as sync_trending rather than as noise/noise ~ 1
  const double noise_floor = 1e-12 * (1.0 + amp);
  if (w_early <= noise_floor) w_early = 0.0;
  if (w_late <= noise_floor) w_late = 0.0;
  if (w_late <= 0.5 * w_early) return TrajectoryClass::sync_trending;
  if (w_late >= 0.9 * w_early) return TrajectoryClass::persistent;
  return TrajectoryClass::inconclusive;
}

}  // namespace oscsync
