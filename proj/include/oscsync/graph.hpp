#pragma once

#include <set>
#include <vector>

#include "oscsync/matrix.hpp"

namespace oscsync {

// One undirected weighted edge, node indices 1-based with i < j.
struct Edge {
  int i;
  int j;
  double w;
};

// Symmetric nonnegative weighted coupling graph over q nodes. Edges are kept
// as a sorted sparse list; zero weights are rejected outright rather than
// treated as absent edges. Immutable after construction.
class CouplingGraph {
 public:
  CouplingGraph(int q, std::vector<Edge> edges);
  static CouplingGraph edgeless(int q) { return CouplingGraph(q, {}); }

  int node_count() const { return q_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edges() const { return !edges_.empty(); }

 private:
  int q_;
  std::vector<Edge> edges_;
};

// Weighted graph Laplacian: diagonal = weighted degree, off-diagonal = -w.
// Symmetric, zero row sums, PSD, annihilates the all-ones vector.
Mat laplacian(const CouplingGraph& g);

// Breadth-first traversal over positive-weight edges. q = 1 is connected.
bool is_connected(const CouplingGraph& g);

// ver E = { i : (i,j) in E }; empty for an edgeless graph.
std::set<int> incident_vertices(const CouplingGraph& g);

// True iff the incident vertex sets are disjoint.
bool are_edge_isolated(const CouplingGraph& g1, const CouplingGraph& g2);

// Edge present iff present in either input; weights of shared edges add.
CouplingGraph graph_union(const CouplingGraph& g1, const CouplingGraph& g2);

}  // namespace oscsync
