#ifndef NETFORGE_TESTS_FIXTURES_HPP
#define NETFORGE_TESTS_FIXTURES_HPP

#include <stdexcept>
#include <vector>

#include "netforge/evaluator.hpp"
#include "netforge/instance.hpp"
#include "netforge/rng.hpp"
#include "netforge/topology.hpp"

namespace netforge::testing {

inline NodeRecord mk_node(int id, NodeKind kind, double u_max, double x,
                          double y, double flat_flow) {
  NodeRecord n;
  n.id = id;
  n.kind = kind;
  n.u_max = u_max;
  n.x = x;
  n.y = y;
  n.flow.fill(flat_flow);
  return n;
}

// Two T nodes joined by two parallel 1-J paths; the shorter-sequence path
// becomes the secondary main, the other its sub.
inline Instance square_instance() {
  std::vector<NodeRecord> nodes{
      mk_node(0, NodeKind::T, 1000.0, 0.0, 0.0, 1.0),
      mk_node(1, NodeKind::T, 1000.0, 300.0, 0.0, 1.0),
      mk_node(2, NodeKind::J, 100.0, 150.0, 80.0, 40.0),
      mk_node(3, NodeKind::J, 100.0, 150.0, -80.0, 60.0),
  };
  Topology x0 = Topology::from_edges(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}});
  return make_instance(std::move(nodes), std::move(x0), 200.0);
}

// One primary main (T-H-T) and one secondary main (T-J-T).
inline Instance house_instance() {
  std::vector<NodeRecord> nodes{
      mk_node(0, NodeKind::T, 1000.0, 0.0, 0.0, 1.0),
      mk_node(1, NodeKind::T, 1000.0, 300.0, 0.0, 1.0),
      mk_node(2, NodeKind::H, 400.0, 150.0, 90.0, 30.0),
      mk_node(3, NodeKind::J, 100.0, 150.0, -80.0, 40.0),
  };
  Topology x0 = Topology::from_edges(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}});
  return make_instance(std::move(nodes), std::move(x0), 200.0);
}

// Square plus a two-node J pendant chain hanging off node 3. Adding the
// candidate edge (3,5) closes a J cycle without changing any path.
inline Instance pendant_instance() {
  std::vector<NodeRecord> nodes{
      mk_node(0, NodeKind::T, 1000.0, 0.0, 0.0, 1.0),
      mk_node(1, NodeKind::T, 1000.0, 300.0, 0.0, 1.0),
      mk_node(2, NodeKind::J, 100.0, 150.0, 80.0, 40.0),
      mk_node(3, NodeKind::J, 100.0, 150.0, -80.0, 60.0),
      mk_node(4, NodeKind::J, 100.0, 150.0, -160.0, 5.0),
      mk_node(5, NodeKind::J, 100.0, 80.0, -150.0, 5.0),
  };
  Topology x0 = Topology::from_edges(
      6, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {3, 4}, {4, 5}});
  return make_instance(std::move(nodes), std::move(x0), 200.0);
}

// Square plus one J leaf attached to node 3, which sits on the merged
// secondary main as a sub-path interior; the leaf is a hang node.
inline Instance hang_instance() {
  std::vector<NodeRecord> nodes{
      mk_node(0, NodeKind::T, 1000.0, 0.0, 0.0, 1.0),
      mk_node(1, NodeKind::T, 1000.0, 300.0, 0.0, 1.0),
      mk_node(2, NodeKind::J, 100.0, 150.0, 80.0, 40.0),
      mk_node(3, NodeKind::J, 100.0, 150.0, -80.0, 60.0),
      mk_node(4, NodeKind::J, 100.0, 150.0, -160.0, 5.0),
  };
  Topology x0 =
      Topology::from_edges(5, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {3, 4}});
  return make_instance(std::move(nodes), std::move(x0), 200.0);
}

// Seeded random instance with at most max_nodes nodes and at most
// max_candidates candidate edges, with a verifier-valid x0.
inline Instance random_tiny_instance(Rng& rng, int max_nodes = 5,
                                     int max_candidates = 10) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int n = 3 + rng.uniform_index(max_nodes - 2);
    std::vector<NodeRecord> nodes;
    for (int v = 0; v < n; ++v) {
      NodeKind kind;
      if (v < 2)
        kind = NodeKind::T;
      else if (v == 2 && n >= 4 && rng.uniform() < 0.3)
        kind = NodeKind::H;
      else
        kind = NodeKind::J;
      double u_max = kind == NodeKind::T   ? 1000.0
                     : kind == NodeKind::H ? 400.0
                                           : (rng.uniform() < 0.3 ? 150.0 : 100.0);
      NodeRecord rec = mk_node(v, kind, u_max, rng.uniform(0.0, 320.0),
                               rng.uniform(0.0, 320.0), 0.0);
      for (auto& f : rec.flow) f = rng.uniform(2.0, 40.0);
      nodes.push_back(rec);
    }

    Instance probe;
    probe.nodes = nodes;
    probe.x0 = Topology(n);
    probe.d_max = 200.0;
    auto cand = candidate_edges(probe);
    if (cand.empty() || static_cast<int>(cand.size()) > max_candidates)
      continue;

    for (int tries = 0; tries < 200; ++tries) {
      Topology x0(n);
      for (const auto& [i, j] : cand)
        if (rng.uniform() < 0.55) x0.set_edge(i, j, true);
      try {
        return make_instance(nodes, x0, probe.d_max);
      } catch (const std::invalid_argument&) {
      }
    }
  }
  throw std::runtime_error("random_tiny_instance: no valid instance found");
}

}  // namespace netforge::testing

#endif
