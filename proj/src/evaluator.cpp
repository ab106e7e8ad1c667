#include "netforge/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace netforge {

const char* to_string(InvalidReason r) {
  switch (r) {
    case InvalidReason::None: return "None";
    case InvalidReason::Distance: return "Distance";
    case InvalidReason::HDegree: return "HDegree";
    case InvalidReason::SelectBestPathFail: return "SelectBestPathFail";
    case InvalidReason::PathUtilization: return "PathUtilization";
    case InvalidReason::NodeCapExceeded: return "NodeCapExceeded";
    case InvalidReason::PathTooLong: return "PathTooLong";
    case InvalidReason::IsolatedNode: return "IsolatedNode";
    case InvalidReason::Disconnected: return "Disconnected";
    case InvalidReason::HangNodeCap: return "HangNodeCap";
  }
  return "?";
}

namespace {

// Decomposition without hang nodes/merge data, or the failure reason.
struct DecomposeOutcome {
  InvalidReason fail = InvalidReason::None;
  PathDecomposition dec;
};

DecomposeOutcome decompose(const Instance& inst, const Topology& topo) {
  DecomposeOutcome out;

  auto primary = enumerate_primary_main(inst, topo);
  if (!primary.ok) {
    out.fail = InvalidReason::HDegree;
    return out;
  }

  auto candidates = enumerate_secondary_candidates(inst, topo, primary.paths);
  auto selection = select_best_path(candidates, inst);
  if (!selection.ok) {
    out.fail = InvalidReason::SelectBestPathFail;
    return out;
  }

  out.dec.primary_main = std::move(primary.paths);
  out.dec.secondary_main = std::move(selection.secondary_main);
  out.dec.sub_paths = std::move(selection.sub_paths);
  out.dec.attachments = std::move(selection.attachments);

  // Merge each sub path into its secondary main; snumber counts the nodes
  // the subs contributed.
  out.dec.merged_secondary.resize(out.dec.secondary_main.size());
  out.dec.snumber.assign(out.dec.secondary_main.size(), 0);
  for (size_t i = 0; i < out.dec.secondary_main.size(); ++i) {
    const auto& seq = out.dec.secondary_main[i].nodes;
    out.dec.merged_secondary[i].assign(seq.begin(), seq.end());
    std::sort(out.dec.merged_secondary[i].begin(),
              out.dec.merged_secondary[i].end());
  }
  for (const auto& [main_idx, sub_idx] : out.dec.attachments) {
    auto& merged = out.dec.merged_secondary[main_idx];
    const int before = static_cast<int>(merged.size());
    for (int v : out.dec.sub_paths[sub_idx].nodes)
      if (!std::binary_search(merged.begin(), merged.end(), v))
        merged.insert(std::lower_bound(merged.begin(), merged.end(), v), v);
    out.dec.snumber[main_idx] += static_cast<int>(merged.size()) - before;
  }

  out.dec.hang_nodes = find_hang_nodes(topo, out.dec);
  return out;
}

}  // namespace

std::vector<MainPathProfile> main_path_profiles(const Instance& inst,
                                                const Topology& topo,
                                                const PathDecomposition& dec) {
  std::vector<MainPathProfile> mains;
  auto add = [&](const Path& p, const std::vector<int>& merged, bool primary,
                 int snumber) {
    MainPathProfile m;
    m.head = p.head();
    m.tail = p.tail();
    m.nodes = merged;
    m.is_primary = primary;
    m.cap = std::max(inst.u_max(m.head), inst.u_max(m.tail));
    for (int t = 0; t < kHoursPerDay; ++t) {
      double sum = 0.0;
      for (int v : m.nodes)
        if (v != m.head && v != m.tail) sum += inst.flow(v, t);
      m.raw_flow[t] = sum;
      m.flow[t] = sum / m.cap;
    }
    const double n = static_cast<double>(m.nodes.size());
    int deg1 = 0;
    for (int v : m.nodes) deg1 += topo.degree(v) == 1 ? 1 : 0;
    m.hratio = deg1 / n;
    m.sratio = primary ? 0.0 : snumber / n;
    mains.push_back(std::move(m));
  };

  for (const Path& p : dec.primary_main) {
    std::vector<int> merged(p.nodes.begin(), p.nodes.end());
    std::sort(merged.begin(), merged.end());
    add(p, merged, true, 0);
  }
  for (size_t i = 0; i < dec.secondary_main.size(); ++i)
    add(dec.secondary_main[i], dec.merged_secondary[i], false, dec.snumber[i]);
  return mains;
}

Verdict verify(const Instance& inst, const Topology& topo) {
  if (topo.size() != inst.size())
    throw std::invalid_argument("verify: topology size mismatch");

  Verdict verdict;
  verdict.objective = inst.params.invalid_penalty;

  auto invalid = [&](InvalidReason r) {
    verdict.valid = false;
    verdict.reason = r;
    return verdict;
  };

  for (const auto& [i, j] : topo.edges())
    if (dist(inst, i, j) > inst.d_max) return invalid(InvalidReason::Distance);

  auto outcome = decompose(inst, topo);
  if (outcome.fail != InvalidReason::None) return invalid(outcome.fail);
  verdict.decomposition = outcome.dec;

  auto mains = main_path_profiles(inst, topo, outcome.dec);

  for (const auto& m : mains)
    for (int t = 0; t < kHoursPerDay; ++t)
      if (m.raw_flow[t] > m.cap) return invalid(InvalidReason::PathUtilization);

  for (const auto& m : mains)
    for (int v : m.nodes)
      if (inst.u_max(v) > m.cap) return invalid(InvalidReason::NodeCapExceeded);

  for (const auto& m : mains)
    if (static_cast<int>(m.nodes.size()) > inst.path_node_cap)
      return invalid(InvalidReason::PathTooLong);

  for (int v = 0; v < topo.size(); ++v)
    if (topo.degree(v) == 0) return invalid(InvalidReason::IsolatedNode);

  if (connected_components(topo).size() > 1)
    return invalid(InvalidReason::Disconnected);

  for (int v = 0; v < topo.size(); ++v) {
    if (topo.degree(v) != 1) continue;
    if (inst.u_max(v) > inst.u_max(topo.neighbors(v)[0]))
      return invalid(InvalidReason::HangNodeCap);
  }

  if (mains.empty()) return invalid(InvalidReason::SelectBestPathFail);

  verdict.valid = true;
  verdict.reason = InvalidReason::None;
  verdict.objective = cal_obj_value(inst, topo, outcome.dec);
  return verdict;
}

double cal_obj_value(const Instance& inst, const Topology& topo,
                     const PathDecomposition& dec) {
  auto mains = main_path_profiles(inst, topo, dec);
  const int path_count = static_cast<int>(mains.size());
  if (path_count == 0)
    throw std::invalid_argument("cal_obj_value: no main paths");
  const double p_count = static_cast<double>(path_count);
  const auto& prm = inst.params;

  int hits = 0;
  for (const auto& m : mains) {
    for (int t = 0; t < kHoursPerDay; ++t) {
      const double b = inst.benchmark[t];
      const bool hit =
          b == 0.0 ? m.flow[t] == 0.0 : std::abs(m.flow[t] / b - 1.0) <= prm.eps;
      hits += hit ? 1 : 0;
    }
  }
  const double term1 = hits / (kHoursPerDay * p_count);

  double ratio_sum = 0.0;
  for (const auto& m : mains)
    ratio_sum += prm.alpha * m.sratio + prm.beta * m.hratio;
  const double term2 = ratio_sum / p_count;

  double var_sum = 0.0;
  double var_max = 0.0;
  double var_min = 0.0;
  for (int t = 0; t < kHoursPerDay; ++t) {
    double mean = 0.0;
    for (const auto& m : mains) mean += m.flow[t];
    mean /= p_count;
    double var = 0.0;
    for (const auto& m : mains)
      var += (m.flow[t] - mean) * (m.flow[t] - mean);
    var /= p_count;
    var_sum += var;
    if (t == 0 || var > var_max) var_max = var;
    if (t == 0 || var < var_min) var_min = var;
  }
  const double term3 = var_sum / kHoursPerDay + var_max + var_min;

  const double utility = term1 - term2 - term3;
  return utility + prm.gamma_cost * cost(inst, topo);
}

double cost(const Instance& inst, const Topology& topo) {
  const auto& prm = inst.params;
  double acc = 0.0;
  const int n = inst.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (topo.has_edge(i, j) == inst.x0.has_edge(i, j)) continue;
      acc += inst.x0.has_edge(i, j) ? prm.lambda1 : prm.lambda0 * dist(inst, i, j);
    }
  return acc;
}

std::array<double, kHoursPerDay> compute_benchmark(const Instance& inst) {
  auto outcome = decompose(inst, inst.x0);
  if (outcome.fail != InvalidReason::None)
    throw std::invalid_argument(
        std::string("initial topology is invalid: ") + to_string(outcome.fail));
  auto mains = main_path_profiles(inst, inst.x0, outcome.dec);
  if (mains.empty())
    throw std::invalid_argument("initial topology has no main paths");

  std::array<double, kHoursPerDay> b{};
  for (int t = 0; t < kHoursPerDay; ++t) {
    double sum = 0.0;
    for (const auto& m : mains) sum += m.flow[t];
    b[t] = sum / static_cast<double>(mains.size());
  }
  return b;
}

Instance make_instance(std::vector<NodeRecord> nodes, Topology x0,
                       double d_max, int path_node_cap,
                       ObjectiveParams params) {
  Instance inst;
  inst.nodes = std::move(nodes);
  inst.x0 = std::move(x0);
  inst.d_max = d_max;
  inst.path_node_cap = path_node_cap;
  inst.params = params;

  if (inst.x0.size() != inst.size())
    throw std::invalid_argument("x0 node count does not match records");
  for (int v = 0; v < inst.size(); ++v) {
    if (inst.nodes[v].id != v)
      throw std::invalid_argument("node ids must be 0..N-1 in order");
    inst.nodes[v].validate();
  }
  for (const auto& [i, j] : inst.x0.edges())
    if (dist(inst, i, j) > d_max)
      throw std::invalid_argument("x0 contains an edge beyond d_max");

  inst.benchmark = compute_benchmark(inst);

  // Full self-check: the instance must rate its own initial topology valid.
  Verdict v = verify(inst, inst.x0);
  if (!v.valid)
    throw std::invalid_argument(std::string("initial topology is invalid: ") +
                                to_string(v.reason));
  return inst;
}

}  // namespace netforge
