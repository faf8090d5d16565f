#include "oscsync/circuit.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace oscsync {

NetworkSpec netlist_to_network(const Netlist& nl, int q) {
  if (q < 1) throw std::invalid_argument("netlist_to_network: node count must be >= 1");
  if (!(nl.c0 > 0.0) || !(nl.l0 > 0.0) || !std::isfinite(nl.c0) || !std::isfinite(nl.l0))
    throw std::invalid_argument("netlist_to_network: tank c0 and l0 must be finite and > 0");

  std::set<std::tuple<int, int, int>> seen;  // (kind, i, j) with i < j
  std::vector<Edge> inertial, dissipative, restorative;
  for (const Coupler& c : nl.couplers) {
    if (c.i < 1 || c.j < 1 || c.i > q || c.j > q) {
      std::ostringstream msg;
      msg << "netlist_to_network: coupler node (" << c.i << "," << c.j
          << ") outside 1.." << q;
      throw std::invalid_argument(msg.str());
    }
    if (c.i == c.j)
      throw std::invalid_argument("netlist_to_network: coupler endpoints must differ");
    if (!(c.value > 0.0) || !std::isfinite(c.value))
      throw std::invalid_argument("netlist_to_network: coupler values must be finite and > 0");
    const int lo = std::min(c.i, c.j), hi = std::max(c.i, c.j);
    if (!seen.insert({static_cast<int>(c.kind), lo, hi}).second) {
      std::ostringstream msg;
      msg << "netlist_to_network: duplicate coupler of one kind on pair (" << lo << ","
          << hi << ")";
      throw std::invalid_argument(msg.str());
    }
    switch (c.kind) {
      case CouplerKind::C: inertial.push_back({lo, hi, c.value}); break;
      case CouplerKind::R: dissipative.push_back({lo, hi, 1.0 / c.value}); break;
      case CouplerKind::L: restorative.push_back({lo, hi, 1.0 / c.value}); break;
    }
  }
  return NetworkSpec(CouplingGraph(q, std::move(inertial)),
                     CouplingGraph(q, std::move(dissipative)),
                     CouplingGraph(q, std::move(restorative)), nl.c0, 1.0 / nl.l0);
}

double uncoupled_frequency(const Netlist& nl) {
  if (!(nl.c0 > 0.0) || !(nl.l0 > 0.0))
    throw std::invalid_argument("uncoupled_frequency: tank c0 and l0 must be > 0");
  return 1.0 / std::sqrt(nl.c0 * nl.l0);
}

}  // namespace oscsync
