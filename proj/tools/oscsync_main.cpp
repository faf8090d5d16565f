#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "oscsync/io.hpp"

namespace {

using namespace oscsync;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNonsync = 3;

NetworkSpec with_overrides(const NetworkSpec& net, double m0, double k0) {
  return NetworkSpec(net.inertial, net.dissipative, net.restorative,
                     m0 > 0.0 ? m0 : net.m0, k0 > 0.0 ? k0 : net.k0);
}

rvec parse_x0_list(const std::string& text, int q) {
  rvec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size())
      throw std::invalid_argument("--x0: cannot parse \"" + item + "\" as a number");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != q) {
    std::ostringstream msg;
    msg << "--x0: expected " << q << " comma-separated values, got " << out.size();
    throw std::invalid_argument(msg.str());
  }
  return out;
}

int cmd_analyze(const std::string& path, double m0, double k0) {
  const NetworkSpec net = with_overrides(parse_network_file(path), m0, k0);
  const AnalysisReport report = analyze(net);
  std::cout << report_to_json(report);
  return report.synchronizes() ? kExitOk : kExitNonsync;
}

int cmd_structure(const std::string& path) {
  const NetworkSpec net = parse_network_file(path);
  std::cout << structure_to_json(net);
  return kExitOk;
}

int cmd_netlist(const std::string& path) {
  const ParsedNetlist parsed = parse_netlist_file(path);
  const NetworkSpec net = netlist_to_network(parsed.netlist, parsed.q);
  std::cout << network_to_json(net);
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& x0_text, bool witness_mode,
                 double dt, double t_end, int stride, std::uint64_t seed,
                 const std::string& out_path) {
  const NetworkSpec net = parse_network_file(path);
  rvec x0(net.q, 0.0), v0(net.q, 0.0);
  if (witness_mode) {
    const auto witness = kernel_oracle(net);
    if (!witness)
      throw std::invalid_argument(
          "--witness: network synchronizes, no non-synchronous mode exists");
    for (int i = 0; i < net.q; ++i) {
      x0[i] = witness->xi[i].real();
      v0[i] = -witness->omega * witness->xi[i].imag();
    }
  } else if (!x0_text.empty()) {
    x0 = parse_x0_list(x0_text, net.q);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    for (double& v : x0) v = pick(rng);
  }

  const SimConfig cfg = make_sim_config(net, dt, t_end, stride);
  const Trajectory traj = simulate(net, x0, v0, cfg);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    write_trajectory_csv(out, traj);
  }
  std::cout << "classification=" << trajectory_class_name(classify_trajectory(traj))
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronization analysis of coupled harmonic oscillator networks"};
  app.require_subcommand(1);

  std::string net_path, nl_path, x0_text, out_path;
  double m0_override = 0.0, k0_override = 0.0;
  double dt = 0.0, t_end = 2000.0;
  int stride = 1;
  std::uint64_t seed = 1;
  bool witness_mode = false;

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Spectral synchronization verdict as JSON");
  analyze_cmd->add_option("network", net_path, "network JSON file")->required();
  analyze_cmd->add_option("--m0", m0_override, "override oscillator inertia")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--k0", k0_override, "override oscillator stiffness")
      ->check(CLI::PositiveNumber);

  auto* structure_cmd =
      app.add_subcommand("structure", "Graph connectivity and isolation report");
  structure_cmd->add_option("network", net_path, "network JSON file")->required();

  auto* netlist_cmd =
      app.add_subcommand("netlist", "Convert an RLC netlist to a network file");
  netlist_cmd->add_option("netlist", nl_path, "netlist JSON file")->required();

  auto* sim_cmd = app.add_subcommand("simulate", "Integrate the network dynamics");
  sim_cmd->add_option("network", net_path, "network JSON file")->required();
  auto* x0_opt = sim_cmd->add_option("--x0", x0_text, "comma-separated initial positions");
  sim_cmd->add_flag("--witness", witness_mode, "start on the certified non-sync mode")
      ->excludes(x0_opt);
  sim_cmd->add_option("--dt", dt, "time step in seconds (default: auto)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--t-end", t_end, "horizon in seconds")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--stride", stride, "record every Nth step")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "seed for the random initial condition");
  sim_cmd->add_option("--out", out_path, "trajectory CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) return cmd_analyze(net_path, m0_override, k0_override);
    if (*structure_cmd) return cmd_structure(net_path);
    if (*netlist_cmd) return cmd_netlist(nl_path);
    if (*sim_cmd)
      return cmd_simulate(net_path, x0_text, witness_mode, dt, t_end, stride, seed,
                          out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
