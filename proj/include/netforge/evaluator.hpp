#ifndef NETFORGE_EVALUATOR_HPP
#define NETFORGE_EVALUATOR_HPP

#include <array>
#include <optional>
#include <string>

#include "netforge/instance.hpp"
#include "netforge/path_engine.hpp"

namespace netforge {

enum class InvalidReason {
  None,
  Distance,
  HDegree,
  SelectBestPathFail,
  PathUtilization,
  NodeCapExceeded,
  PathTooLong,
  IsolatedNode,
  Disconnected,
  HangNodeCap,
};

const char* to_string(InvalidReason r);

struct Verdict {
  bool valid = false;
  double objective = 0.0;
  InvalidReason reason = InvalidReason::None;
  std::optional<PathDecomposition> decomposition;
};

/// Per merged main path: node set, ends, hourly utilization and the ratios
/// entering the objective.
struct MainPathProfile {
  int head = -1;
  int tail = -1;
  std::vector<int> nodes;  // sorted, post-merge
  bool is_primary = false;
  double cap = 0.0;  // max end u_max
  std::array<double, kHoursPerDay> raw_flow{};  // Mbps over interior nodes
  std::array<double, kHoursPerDay> flow{};      // raw_flow / cap
  double sratio = 0.0;
  double hratio = 0.0;
};

/// Main paths in canonical order (primary mains, then merged secondary
/// mains in head/tail group order).
std::vector<MainPathProfile> main_path_profiles(const Instance& inst,
                                                const Topology& topo,
                                                const PathDecomposition& dec);

/// Check order: edge distances; H-degree rule; SelectBestPath; per-path
/// utilization; per-path node u_max cap; path length cap; isolated nodes;
/// connectivity; degree-1 u_max rule. First violation decides the reason;
/// a violation scores invalid_penalty.
Verdict verify(const Instance& inst, const Topology& topo);

/// f(x) for a decomposition produced by verify on this topology.
double cal_obj_value(const Instance& inst, const Topology& topo,
                     const PathDecomposition& dec);

/// Adjustment cost against x0, summed over unordered pairs.
double cost(const Instance& inst, const Topology& topo);

/// B(t): mean hourly utilization over x0's main paths. Throws if x0 does not
/// verify. Does not read inst.benchmark.
std::array<double, kHoursPerDay> compute_benchmark(const Instance& inst);

/// Validates records and x0, computes and caches the benchmark.
Instance make_instance(std::vector<NodeRecord> nodes, Topology x0,
                       double d_max, int path_node_cap = 15,
                       ObjectiveParams params = {});

}  // namespace netforge

#endif
