#include <doctest.h>

#include <cmath>

#include "oscsync/simulate.hpp"
#include "test_support.hpp"

using namespace oscsync;
using namespace oscsync::testing;

namespace {

NetworkSpec scalar_oscillator(double m0 = 1.0, double k0 = 1.0) {
  return NetworkSpec(CouplingGraph::edgeless(1), CouplingGraph::edgeless(1),
                     CouplingGraph::edgeless(1), m0, k0);
}

}  // namespace

TEST_CASE("simulate: scalar oscillator tracks cos t") {
  const NetworkSpec net = scalar_oscillator();
  const SimConfig cfg = make_sim_config(net, 0.01, 20.0);
  const Trajectory traj = simulate(net, {1.0}, {0.0}, cfg);
  double worst = 0.0;
  for (size_t k = 0; k < traj.times.size(); ++k)
    worst = std::max(worst, std::abs(traj.positions[k][0] - std::cos(traj.times[k])));
  CHECK(worst <= 1e-6);
}

TEST_CASE("integrator order: halving dt cuts the error 8x to 32x") {
  const NetworkSpec net = scalar_oscillator();
  auto max_err = [&](double dt) {
    const SimConfig cfg{dt, 20.0, 1};
    const Trajectory traj = simulate(net, {1.0}, {0.0}, cfg);
    double worst = 0.0;
    for (size_t k = 0; k < traj.times.size(); ++k)
      worst = std::max(worst, std::abs(traj.positions[k][0] - std::cos(traj.times[k])));
    return worst;
  };
  const double coarse = max_err(0.04);
  const double fine = max_err(0.02);
  const double factor = coarse / fine;
  CHECK(factor >= 8.0);
  CHECK(factor <= 32.0);
}

TEST_CASE("energy: zero state, scalar oscillator, consensus state") {
  const NetworkSpec net = tanks6_network(2.0, 2.0);
  CHECK(energy(net, rvec(6, 0.0), rvec(6, 0.0)) == 0.0);

  CHECK(energy(scalar_oscillator(), {1.0}, {0.0}) == doctest::Approx(0.5));

  // coupling terms vanish on consensus: V = 0.5 k0 q
  CHECK(energy(net, rvec(6, 1.0), rvec(6, 0.0)) == doctest::Approx(0.5 * 2.0 * 6));

  CHECK_THROWS_AS(energy(net, rvec(5, 0.0), rvec(6, 0.0)), dimension_error);
}

TEST_CASE("disagreement") {
  CHECK(disagreement(rvec(4, 3.14)) == 0.0);
  CHECK(disagreement({0.0, 1.0}) == 1.0);
  CHECK(disagreement({-1.0, 0.0, 3.0}) == 4.0);
}

TEST_CASE("make_sim_config clamps dt to the step-frequency cap") {
  const NetworkSpec net = tanks6_network(1.0, 1.0);
  const double omega_max = max_pencil_frequency(net);
  CHECK(omega_max == doctest::Approx(std::sqrt(5.0)));  // pencil top eigenvalue 5

  const SimConfig loose = make_sim_config(net, 10.0, 100.0);
  CHECK(loose.dt * omega_max <= 0.05 * (1.0 + 1e-12));
  const SimConfig tight = make_sim_config(net, 1e-3, 100.0);
  CHECK(tight.dt == 1e-3);

  CHECK_THROWS_AS(make_sim_config(net, 0.01, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_sim_config(net, 0.01, 10.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_sim_config(net, -0.5, 10.0), std::invalid_argument);
}

TEST_CASE("simulate rejects a config that violates the step cap") {
  const NetworkSpec net = tanks6_network(1.0, 1.0);
  const SimConfig bad{1.0, 10.0, 1};  // dt * omega_max = sqrt(5) >> 0.05
  CHECK_THROWS_AS(simulate(net, rvec(6, 0.0), rvec(6, 0.0), bad), std::invalid_argument);
}

TEST_CASE("energy is nonincreasing along simulated trajectories") {
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> pick(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const NetworkSpec net = random_network(rng);
    rvec x0(net.q), v0(net.q);
    for (double& v : x0) v = pick(rng);
    for (double& v : v0) v = pick(rng);
    const SimConfig cfg = make_sim_config(net, 0.0, 50.0);
    const Trajectory traj = simulate(net, x0, v0, cfg);
    CHECK(traj.max_energy_step_increase <= 1e-6 * (1.0 + traj.initial_energy));
    for (double e : traj.energy) CHECK(e >= 0.0);
  }
}

TEST_CASE("consensus initial data stays in consensus") {
  const NetworkSpec net = tanks6_network(2.0, 2.0);
  const SimConfig cfg = make_sim_config(net, 0.0, 150.0);
  const Trajectory traj = simulate(net, rvec(6, 0.7), rvec(6, -0.3), cfg);
  for (double d : traj.disagreement) CHECK(d <= 1e-9);
  CHECK(classify_trajectory(traj) == TrajectoryClass::sync_trending);
}

TEST_CASE("witness mode persists and tracks the closed form") {
  const NetworkSpec net = tanks6_network(1.0, 1.0);
  const auto w = kernel_oracle(net);
  REQUIRE(w.has_value());
  const double omega = w->omega;

  rvec x0(net.q), v0(net.q);
  double amp = 0.0;
  for (int i = 0; i < net.q; ++i) {
    x0[i] = w->xi[i].real();
    v0[i] = -omega * w->xi[i].imag();
    amp = std::max(amp, std::abs(w->xi[i]));
  }

  const double horizon = 20.0 * 2.0 * M_PI / omega;
  const SimConfig cfg = make_sim_config(net, 0.0, horizon);
  const Trajectory traj = simulate(net, x0, v0, cfg);

  // x(t) = Re(e^{j omega t} xi)
  double worst = 0.0;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    for (int i = 0; i < net.q; ++i) {
      const double closed =
          std::cos(omega * t) * w->xi[i].real() - std::sin(omega * t) * w->xi[i].imag();
      worst = std::max(worst, std::abs(traj.positions[k][i] - closed));
    }
  }
  CHECK(worst / amp <= 1e-4);
}

TEST_CASE("classify_trajectory: sync and persistent cases") {
  const NetworkSpec sync_net = tanks6_network(2.0, 2.0);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pick(-1.0, 1.0);
  rvec x0(6);
  for (double& v : x0) v = pick(rng);
  const Trajectory traj =
      simulate(sync_net, x0, rvec(6, 0.0), make_sim_config(sync_net, 0.0, 2000.0, 10));
  CHECK(classify_trajectory(traj) == TrajectoryClass::sync_trending);

  const NetworkSpec per_net = tanks6_network(1.0, 1.0);
  const auto w = kernel_oracle(per_net);
  REQUIRE(w.has_value());
  rvec wx0(6), wv0(6);
  for (int i = 0; i < 6; ++i) {
    wx0[i] = w->xi[i].real();
    wv0[i] = -w->omega * w->xi[i].imag();
  }
  const Trajectory ptraj =
      simulate(per_net, wx0, wv0, make_sim_config(per_net, 0.0, 2000.0, 10));
  CHECK(classify_trajectory(ptraj) == TrajectoryClass::persistent);
}

TEST_CASE("classify_trajectory: inconclusive band between the thresholds") {
  // synthetic trajectory: disagreement shrinks to 0.7x, between 0.5 and 0.9
  Trajectory traj;
  traj.omega0 = 1.0;
  traj.initial_energy = 1.0;
  traj.max_energy_step_increase = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = 0.2 * k;  // horizon 200 > 20 periods
    traj.times.push_back(t);
    traj.positions.push_back({0.0, t < 150.0 ? 1.0 : 0.7});
    traj.velocities.push_back({0.0, 0.0});
    traj.energy.push_back(1.0);
    traj.disagreement.push_back(t < 150.0 ? 1.0 : 0.7);
  }
  CHECK(classify_trajectory(traj) == TrajectoryClass::inconclusive);
}

TEST_CASE("classify_trajectory requires 20 uncoupled periods") {
  const NetworkSpec net = scalar_oscillator();  // omega0 = 1, period 2 pi
  const SimConfig cfg = make_sim_config(net, 0.0, 50.0);  // < 20 * 2 pi
  const Trajectory traj = simulate(net, {1.0}, {0.0}, cfg);
  CHECK_THROWS_AS(classify_trajectory(traj), std::invalid_argument);
}

TEST_CASE("simulate validates state dimensions") {
  const NetworkSpec net = tanks6_network(2.0, 2.0);
  const SimConfig cfg = make_sim_config(net, 0.0, 10.0);
  CHECK_THROWS_AS(simulate(net, rvec(5, 0.0), rvec(6, 0.0), cfg), dimension_error);
}

TEST_CASE("recording stride keeps endpoints") {
  const NetworkSpec net = scalar_oscillator();
  const SimConfig cfg = make_sim_config(net, 0.01, 1.0, 7);
  const Trajectory traj = simulate(net, {1.0}, {0.0}, cfg);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(1.0));
}
