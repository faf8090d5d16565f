#pragma once

#include <iosfwd>
#include <string>

#include "oscsync/circuit.hpp"
#include "oscsync/network.hpp"
#include "oscsync/simulate.hpp"

namespace oscsync {

// Shortest of %.17g: parses back to the identical double.
std::string format_sig17(double v);

// Network schema:
//   {"q": int, "m0": num, "k0": num,
//    "inertial": [{"i": int, "j": int, "w": num}, ...],
//    "dissipative": [...], "restorative": [...]}
// Indices 1-based; the three edge arrays may be omitted for edgeless graphs.
// Unknown keys are rejected.
NetworkSpec parse_network_json(const std::string& text);
NetworkSpec parse_network_file(const std::string& path);
std::string network_to_json(const NetworkSpec& net);

// Netlist schema:
//   {"q": int, "tank": {"c0": num, "l0": num},
//    "couplers": [{"kind": "C"|"R"|"L", "i": int, "j": int, "value": num}, ...]}
struct ParsedNetlist {
  Netlist netlist;
  int q;
};
ParsedNetlist parse_netlist_json(const std::string& text);
ParsedNetlist parse_netlist_file(const std::string& path);

// Deterministic key order, all floats at 17 significant digits; non-finite
// margins (q = 1 verdicts) serialize as null.
std::string report_to_json(const AnalysisReport& report);

// Connectivity and isolation summary plus the applicable simpler tests.
std::string structure_to_json(const NetworkSpec& net);

// Header t,x1..xq,v1..vq,V,d; one row per recorded sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace oscsync
