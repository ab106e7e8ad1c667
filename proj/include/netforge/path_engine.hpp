#ifndef NETFORGE_PATH_ENGINE_HPP
#define NETFORGE_PATH_ENGINE_HPP

#include <vector>

#include "netforge/instance.hpp"
#include "netforge/topology.hpp"

namespace netforge {

/// Simple path in canonical orientation: nodes.front() < nodes.back().
struct Path {
  std::vector<int> nodes;

  int head() const { return nodes.front(); }
  int tail() const { return nodes.back(); }
  int length() const { return static_cast<int>(nodes.size()); }

  void canonicalize();
  bool operator==(const Path& o) const = default;
};

bool path_order(const Path& a, const Path& b);  // (head, tail, sequence)

struct PathDecomposition {
  std::vector<Path> primary_main;
  std::vector<Path> secondary_main;  // selected, pre-merge sequences
  std::vector<Path> sub_paths;
  // (index into secondary_main, index into sub_paths)
  std::vector<std::pair<int, int>> attachments;
  // Filled by the evaluator after merging sub paths:
  std::vector<std::vector<int>> merged_secondary;  // sorted node sets
  std::vector<int> snumber;                        // per secondary main
  std::vector<int> hang_nodes;
};

struct PrimaryMainResult {
  bool ok = false;
  int bad_node = -1;  // H node with degree != 2 in the T/H subgraph
  std::vector<Path> paths;
};

/// All simple paths between T-node pairs whose intermediates are all H,
/// on the subgraph induced by T/H nodes. Fails if any H node there has
/// degree != 2.
PrimaryMainResult enumerate_primary_main(const Instance& inst,
                                         const Topology& topo);

/// All simple paths with T/H end nodes and all-J intermediates, on the graph
/// minus edges used by the primary main paths. Paths longer than
/// path_node_cap + 1 nodes are not enumerated.
std::vector<Path> enumerate_secondary_candidates(
    const Instance& inst, const Topology& topo,
    const std::vector<Path>& primary);

struct SelectBestPathResult {
  bool ok = false;
  // Head-tail group whose candidates were all disqualified, when !ok.
  Edge failed_group{-1, -1};
  std::vector<Path> secondary_main;
  std::vector<Path> sub_paths;
  std::vector<std::pair<int, int>> attachments;
};

/// Per head-tail group: paths carrying two J nodes of unequal u_max are
/// demoted to sub paths; of the rest the longest becomes the secondary main
/// (ties broken by smallest node sequence) and the others become its subs.
/// A group with no eligible path fails.
SelectBestPathResult select_best_path(const std::vector<Path>& candidates,
                                      const Instance& inst);

/// Degree-1 nodes whose unique neighbor is an intermediate node of some path
/// of the decomposition.
std::vector<int> find_hang_nodes(const Topology& topo,
                                 const PathDecomposition& dec);

}  // namespace netforge

#endif
