#pragma once

#include <vector>

#include "oscsync/network.hpp"

namespace oscsync {

// LC-tank oscillators (capacitance c0, inductance l0) joined pairwise by
// capacitive, resistive, or inductive couplers. SI units throughout.
enum class CouplerKind { C, R, L };

struct Coupler {
  CouplerKind kind;
  int i;  // 1-based node indices
  int j;
  double value;  // F for C, ohms for R, H for L
};

struct Netlist {
  double c0;  // F
  double l0;  // H
  std::vector<Coupler> couplers;
};

// Node-voltage dynamics of the circuit: capacitive couplers become inertial
// edges (weight = capacitance), resistive become dissipative (weight = 1/R),
// inductive become restorative (weight = 1/L); m0 = c0, k0 = 1/l0.
// Rejects duplicate couplers of one kind on a pair rather than combining
// them: parallel capacitors add but parallel resistors and inductors do not.
NetworkSpec netlist_to_network(const Netlist& nl, int q);

// omega0 = 1/sqrt(c0 l0), the frequency of an uncoupled tank.
double uncoupled_frequency(const Netlist& nl);

}  // namespace oscsync
