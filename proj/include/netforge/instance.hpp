#ifndef NETFORGE_INSTANCE_HPP
#define NETFORGE_INSTANCE_HPP

#include <array>
#include <string>
#include <vector>

#include "netforge/topology.hpp"

namespace netforge {

inline constexpr int kHoursPerDay = 24;

enum class NodeKind { T, H, J };

const char* to_string(NodeKind k);
NodeKind node_kind_from_string(const std::string& s);

struct NodeRecord {
  int id = 0;
  NodeKind kind = NodeKind::J;
  double u_max = 0.0;  // Mbps
  double x = 0.0;      // meters
  double y = 0.0;
  std::array<double, kHoursPerDay> flow{};  // Mbps, hourly averages

  void validate() const;  // throws std::invalid_argument
};

struct ObjectiveParams {
  double eps = 0.4;
  double alpha = 0.02;
  double beta = 0.05;
  double lambda0 = 1e-8;
  double lambda1 = 1e-10;
  double gamma_cost = -1e-3;
  double invalid_penalty = -10.0;
};

/// Immutable problem description. Built via make_instance (evaluator.hpp),
/// which checks x0 validity and caches the benchmark series.
struct Instance {
  std::vector<NodeRecord> nodes;
  Topology x0;
  double d_max = 0.0;  // meters
  int path_node_cap = 15;
  ObjectiveParams params;
  std::array<double, kHoursPerDay> benchmark{};  // B(t)

  int size() const { return static_cast<int>(nodes.size()); }
  NodeKind kind(int v) const { return nodes[v].kind; }
  double u_max(int v) const { return nodes[v].u_max; }
  double flow(int v, int t) const { return nodes[v].flow[t]; }
};

/// Euclidean distance between node positions, meters.
double dist(const Instance& inst, int i, int j);

/// All unordered pairs within d_max, ascending (i, j).
std::vector<Edge> candidate_edges(const Instance& inst);

}  // namespace netforge

#endif
