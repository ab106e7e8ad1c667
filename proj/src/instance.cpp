#include "netforge/instance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace netforge {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::T: return "T";
    case NodeKind::H: return "H";
    case NodeKind::J: return "J";
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "T") return NodeKind::T;
  if (s == "H") return NodeKind::H;
  if (s == "J") return NodeKind::J;
  throw std::invalid_argument("unknown node kind: " + s);
}

void NodeRecord::validate() const {
  if (u_max <= 0.0)
    throw std::invalid_argument("node " + std::to_string(id) +
                                ": u_max must be positive");
  for (double f : flow)
    if (!(f >= 0.0))
      throw std::invalid_argument("node " + std::to_string(id) +
                                  ": flows must be nonnegative");
}

double dist(const Instance& inst, int i, int j) {
  const int n = inst.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("dist: node id out of range");
  if (i == j) throw std::invalid_argument("dist: node ids must differ");
  const double dx = inst.nodes[i].x - inst.nodes[j].x;
  const double dy = inst.nodes[i].y - inst.nodes[j].y;
  return std::hypot(dx, dy);
}

std::vector<Edge> candidate_edges(const Instance& inst) {
  std::vector<Edge> out;
  const int n = inst.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(inst, i, j) <= inst.d_max) out.emplace_back(i, j);
  return out;
}

}  // namespace netforge
