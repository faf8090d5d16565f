#include "oscsync/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace oscsync {

using json = nlohmann::json;

std::string format_sig17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_or_diagnose(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
}

double get_number(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key))
    throw std::invalid_argument(ctx + ": missing required field \"" + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number())
    throw std::invalid_argument(ctx + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key))
    throw std::invalid_argument(ctx + ": missing required field \"" + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer())
    throw std::invalid_argument(ctx + "." + key + ": expected an integer");
  return v.get<int>();
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& ctx) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw std::invalid_argument(ctx + ": unknown field \"" + it.key() + "\"");
  }
}

std::vector<Edge> parse_edges(const json& j, const std::string& key, const std::string& ctx) {
  std::vector<Edge> edges;
  if (!j.contains(key)) return edges;
  const json& arr = j.at(key);
  if (!arr.is_array())
    throw std::invalid_argument(ctx + "." + key + ": expected an array of edges");
  int n = 0;
  for (const json& e : arr) {
    const std::string ectx = ctx + "." + key + "[" + std::to_string(n++) + "]";
    if (!e.is_object()) throw std::invalid_argument(ectx + ": expected an object");
    reject_unknown_keys(e, {"i", "j", "w"}, ectx);
    edges.push_back({get_int(e, "i", ectx), get_int(e, "j", ectx),
                     get_number(e, "w", ectx)});
  }
  return edges;
}

void append_edges_json(std::ostringstream& os, const CouplingGraph& g) {
  os << "[";
  bool first = true;
  for (const Edge& e : g.edges()) {
    if (!first) os << ",";
    first = false;
    os << "{\"i\":" << e.i << ",\"j\":" << e.j << ",\"w\":" << format_sig17(e.w) << "}";
  }
  os << "]";
}

void append_network_json(std::ostringstream& os, const NetworkSpec& net) {
  os << "{\"q\":" << net.q << ",\"m0\":" << format_sig17(net.m0)
     << ",\"k0\":" << format_sig17(net.k0) << ",\"inertial\":";
  append_edges_json(os, net.inertial);
  os << ",\"dissipative\":";
  append_edges_json(os, net.dissipative);
  os << ",\"restorative\":";
  append_edges_json(os, net.restorative);
  os << "}";
}

void append_complex_json(std::ostringstream& os, const cplx& z) {
  os << "{\"re\":" << format_sig17(z.real()) << ",\"im\":" << format_sig17(z.imag())
     << "}";
}

}  // namespace

NetworkSpec parse_network_json(const std::string& text) {
  const json j = parse_or_diagnose(text);
  if (!j.is_object()) throw std::invalid_argument("network: expected a JSON object");
  reject_unknown_keys(j, {"q", "m0", "k0", "inertial", "dissipative", "restorative"},
                      "network");
  const int q = get_int(j, "q", "network");
  if (q < 1) throw std::invalid_argument("network.q: must be >= 1");
  const double m0 = get_number(j, "m0", "network");
  const double k0 = get_number(j, "k0", "network");

  auto make_graph = [&](const char* key) {
    try {
      return CouplingGraph(q, parse_edges(j, key, "network"));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("network.") + key + ": " + e.what());
    }
  };
  return NetworkSpec(make_graph("inertial"), make_graph("dissipative"),
                     make_graph("restorative"), m0, k0);
}

NetworkSpec parse_network_file(const std::string& path) {
  return parse_network_json(read_file(path));
}

std::string network_to_json(const NetworkSpec& net) {
  std::ostringstream os;
  append_network_json(os, net);
  os << "\n";
  return os.str();
}

ParsedNetlist parse_netlist_json(const std::string& text) {
  const json j = parse_or_diagnose(text);
  if (!j.is_object()) throw std::invalid_argument("netlist: expected a JSON object");
  reject_unknown_keys(j, {"q", "tank", "couplers"}, "netlist");
  const int q = get_int(j, "q", "netlist");
  if (!j.contains("tank") || !j.at("tank").is_object())
    throw std::invalid_argument("netlist.tank: expected an object");
  const json& tank = j.at("tank");
  reject_unknown_keys(tank, {"c0", "l0"}, "netlist.tank");

  Netlist nl;
  nl.c0 = get_number(tank, "c0", "netlist.tank");
  nl.l0 = get_number(tank, "l0", "netlist.tank");
  if (j.contains("couplers")) {
    const json& arr = j.at("couplers");
    if (!arr.is_array())
      throw std::invalid_argument("netlist.couplers: expected an array");
    int n = 0;
    for (const json& c : arr) {
      const std::string ctx = "netlist.couplers[" + std::to_string(n++) + "]";
      if (!c.is_object()) throw std::invalid_argument(ctx + ": expected an object");
      reject_unknown_keys(c, {"kind", "i", "j", "value"}, ctx);
      if (!c.contains("kind") || !c.at("kind").is_string())
        throw std::invalid_argument(ctx + ".kind: expected \"C\", \"R\", or \"L\"");
      const std::string kind = c.at("kind").get<std::string>();
      CouplerKind ck;
      if (kind == "C") ck = CouplerKind::C;
      else if (kind == "R") ck = CouplerKind::R;
      else if (kind == "L") ck = CouplerKind::L;
      else throw std::invalid_argument(ctx + ".kind: expected \"C\", \"R\", or \"L\"");
      nl.couplers.push_back({ck, get_int(c, "i", ctx), get_int(c, "j", ctx),
                             get_number(c, "value", ctx)});
    }
  }
  return {std::move(nl), q};
}

ParsedNetlist parse_netlist_file(const std::string& path) {
  return parse_netlist_json(read_file(path));
}

std::string report_to_json(const AnalysisReport& report) {
  std::ostringstream os;
  os << "{\"network\":";
  append_network_json(os, report.network);

  const StructureInfo& st = report.structure;
  os << ",\"structure\":{"
     << "\"m_connected\":" << (st.m_connected ? "true" : "false")
     << ",\"b_connected\":" << (st.b_connected ? "true" : "false")
     << ",\"k_connected\":" << (st.k_connected ? "true" : "false")
     << ",\"union_connected\":" << (st.union_connected ? "true" : "false")
     << ",\"m_k_edge_isolated\":" << (st.m_k_edge_isolated ? "true" : "false") << "}";

  os << ",\"verdicts\":[";
  bool first = true;
  for (const SyncVerdict& v : report.verdicts) {
    if (!first) os << ",";
    first = false;
    os << "{\"method\":\"" << method_name(v.method) << "\""
       << ",\"synchronizes\":" << (v.synchronizes ? "true" : "false")
       << ",\"lambda2\":";
    if (v.lambda2) {
      append_complex_json(os, *v.lambda2);
    } else {
      os << "null";
    }
    os << ",\"margin\":";
    if (std::isfinite(v.margin)) {
      os << format_sig17(v.margin);
    } else {
      os << "null";
    }
    os << ",\"parameter_dependent\":" << (v.parameter_dependent ? "true" : "false")
       << "}";
  }
  os << "]";

  os << ",\"spectrum\":[";
  first = true;
  for (const cplx& z : report.spectrum.values()) {
    if (!first) os << ",";
    first = false;
    append_complex_json(os, z);
  }
  os << "]";

  os << ",\"witness\":";
  if (report.witness) {
    const KernelWitness& w = *report.witness;
    os << "{\"omega\":" << format_sig17(w.omega) << ",\"mu\":" << format_sig17(w.mu)
       << ",\"xi\":[";
    first = true;
    for (const cplx& z : w.xi) {
      if (!first) os << ",";
      first = false;
      append_complex_json(os, z);
    }
    os << "],\"residual_pencil\":" << format_sig17(w.residual_pencil)
       << ",\"residual_b\":" << format_sig17(w.residual_b)
       << ",\"distance_from_consensus\":" << format_sig17(w.distance_from_consensus)
       << "}";
  } else {
    os << "null";
  }
  os << "}\n";
  return os.str();
}

std::string structure_to_json(const NetworkSpec& net) {
  const StructureInfo st = structure_of(net);
  std::ostringstream os;
  os << "{\"q\":" << net.q
     << ",\"m_connected\":" << (st.m_connected ? "true" : "false")
     << ",\"b_connected\":" << (st.b_connected ? "true" : "false")
     << ",\"k_connected\":" << (st.k_connected ? "true" : "false")
     << ",\"union_connected\":" << (st.union_connected ? "true" : "false")
     << ",\"m_k_edge_isolated\":" << (st.m_k_edge_isolated ? "true" : "false")
     << ",\"applicable_tests\":[\"general\"";
  if (st.b_connected) os << ",\"connected_B_sufficient\"";
  if (st.m_k_edge_isolated) os << ",\"edge_isolated\"";
  if (!net.inertial.has_edges()) os << ",\"position_velocity\"";
  if (!net.inertial.has_edges() && !net.restorative.has_edges())
    os << ",\"velocity_only\"";
  if (!net.restorative.has_edges()) os << ",\"accel_velocity\"";
  os << "]}\n";
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const size_t q = traj.positions.empty() ? 0 : traj.positions.front().size();
  os << "t";
  for (size_t i = 1; i <= q; ++i) os << ",x" << i;
  for (size_t i = 1; i <= q; ++i) os << ",v" << i;
  os << ",V,d\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    os << format_sig17(traj.times[k]);
    for (size_t i = 0; i < q; ++i) os << "," << format_sig17(traj.positions[k][i]);
    for (size_t i = 0; i < q; ++i) os << "," << format_sig17(traj.velocities[k][i]);
    os << "," << format_sig17(traj.energy[k]) << ","
       << format_sig17(traj.disagreement[k]) << "\n";
  }
}

}  // namespace oscsync
