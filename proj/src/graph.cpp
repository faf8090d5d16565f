#include "oscsync/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace oscsync {

CouplingGraph::CouplingGraph(int q, std::vector<Edge> edges)
    : q_(q), edges_(std::move(edges)) {
  if (q_ < 1) throw std::invalid_argument("CouplingGraph: node count must be >= 1");
  for (const Edge& e : edges_) {
    if (e.i < 1 || e.j < 1 || e.i > q_ || e.j > q_) {
      std::ostringstream msg;
      msg << "CouplingGraph: edge (" << e.i << "," << e.j << ") outside 1.." << q_;
      throw std::invalid_argument(msg.str());
    }
    if (e.i == e.j) throw std::invalid_argument("CouplingGraph: self-loops not allowed");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw std::invalid_argument("CouplingGraph: edge weights must be finite and > 0");
  }
  for (Edge& e : edges_)
    if (e.i > e.j) std::swap(e.i, e.j);
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j) {
      std::ostringstream msg;
      msg << "CouplingGraph: duplicate edge (" << edges_[k].i << "," << edges_[k].j << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

Mat laplacian(const CouplingGraph& g) {
  const int q = g.node_count();
  Mat l(q, q);
  for (const Edge& e : g.edges()) {
    const int i = e.i - 1, j = e.j - 1;
    l(i, i) += e.w;
    l(j, j) += e.w;
    l(i, j) -= e.w;
    l(j, i) -= e.w;
  }
  return l;
}

bool is_connected(const CouplingGraph& g) {
  const int q = g.node_count();
  if (q == 1) return true;
  std::vector<std::vector<int>> adj(q);
  for (const Edge& e : g.edges()) {
    adj[e.i - 1].push_back(e.j - 1);
    adj[e.j - 1].push_back(e.i - 1);
  }
  std::vector<char> seen(q, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  size_t head = 0;
  while (head < queue.size()) {
    const int u = queue[head++];
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return static_cast<int>(queue.size()) == q;
}

std::set<int> incident_vertices(const CouplingGraph& g) {
  std::set<int> out;
  for (const Edge& e : g.edges()) {
    out.insert(e.i);
    out.insert(e.j);
  }
  return out;
}

bool are_edge_isolated(const CouplingGraph& g1, const CouplingGraph& g2) {
  if (g1.node_count() != g2.node_count())
    throw dimension_error("are_edge_isolated: graphs have different node counts");
  const std::set<int> v1 = incident_vertices(g1);
  for (const Edge& e : g2.edges())
    if (v1.count(e.i) || v1.count(e.j)) return false;
  return true;
}

CouplingGraph graph_union(const CouplingGraph& g1, const CouplingGraph& g2) {
  if (g1.node_count() != g2.node_count())
    throw dimension_error("graph_union: graphs have different node counts");
  std::map<std::pair<int, int>, double> acc;
  for (const Edge& e : g1.edges()) acc[{e.i, e.j}] += e.w;
  for (const Edge& e : g2.edges()) acc[{e.i, e.j}] += e.w;
  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [ij, w] : acc) edges.push_back({ij.first, ij.second, w});
  return CouplingGraph(g1.node_count(), std::move(edges));
}

}  // namespace oscsync
