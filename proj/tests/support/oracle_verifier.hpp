#ifndef NETFORGE_TESTS_ORACLE_VERIFIER_HPP
#define NETFORGE_TESTS_ORACLE_VERIFIER_HPP

// Naive straight-line transcription of the verification and scoring rules,
// written against plain adjacency matrices and kept independent of the
// library's path engine and evaluator. Used as the reference in sweep tests.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "netforge/evaluator.hpp"
#include "netforge/instance.hpp"

namespace netforge::oracle {

struct Result {
  bool valid = false;
  double objective = 0.0;
  InvalidReason reason = InvalidReason::None;
};

namespace detail {

using Matrix = std::vector<std::vector<int>>;

inline Matrix to_matrix(const Topology& t) {
  const int n = t.size();
  Matrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && t.has_edge(i, j)) m[i][j] = 1;
  return m;
}

inline void paths_between(const Matrix& adj, int src, int dst,
                          const std::vector<bool>& interior_ok,
                          std::vector<int>& cur, std::vector<bool>& used,
                          std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(adj.size());
  const int v = cur.back();
  for (int w = 0; w < n; ++w) {
    if (!adj[v][w] || used[w]) continue;
    if (w == dst) {
      auto p = cur;
      p.push_back(dst);
      if (p.front() > p.back()) std::reverse(p.begin(), p.end());
      out.push_back(p);
      continue;
    }
    if (!interior_ok[w]) continue;
    used[w] = true;
    cur.push_back(w);
    paths_between(adj, src, dst, interior_ok, cur, used, out);
    cur.pop_back();
    used[w] = false;
  }
}

inline std::vector<std::vector<int>> all_paths(
    const Matrix& adj, const std::vector<int>& endpoints,
    const std::vector<bool>& interior_ok) {
  std::vector<std::vector<int>> out;
  for (size_t a = 0; a < endpoints.size(); ++a)
    for (size_t b = a + 1; b < endpoints.size(); ++b) {
      std::vector<int> cur{endpoints[a]};
      std::vector<bool> used(adj.size(), false);
      used[endpoints[a]] = true;
      paths_between(adj, endpoints[a], endpoints[b], interior_ok, cur, used,
                    out);
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.front() != y.front()) return x.front() < y.front();
    if (x.back() != y.back()) return x.back() < y.back();
    return x < y;
  });
  return out;
}

}  // namespace detail

inline Result evaluate(const Instance& inst, const Topology& topo) {
  using detail::Matrix;
  Result res;
  res.objective = inst.params.invalid_penalty;
  const int n = inst.size();
  Matrix adj = detail::to_matrix(topo);

  // Distance requirement.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adj[i][j]) {
        const double dx = inst.nodes[i].x - inst.nodes[j].x;
        const double dy = inst.nodes[i].y - inst.nodes[j].y;
        if (std::hypot(dx, dy) > inst.d_max) {
          res.reason = InvalidReason::Distance;
          return res;
        }
      }

  // Subgraph over T/H nodes; every H node there must have degree 2.
  Matrix gp(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adj[i][j] && inst.kind(i) != NodeKind::J &&
          inst.kind(j) != NodeKind::J)
        gp[i][j] = 1;
  for (int v = 0; v < n; ++v) {
    if (inst.kind(v) != NodeKind::H) continue;
    int deg = 0;
    for (int w = 0; w < n; ++w) deg += gp[v][w];
    if (deg != 2) {
      res.reason = InvalidReason::HDegree;
      return res;
    }
  }

  // Primary main paths: T ends, H intermediates.
  std::vector<int> t_nodes;
  for (int v = 0; v < n; ++v)
    if (inst.kind(v) == NodeKind::T) t_nodes.push_back(v);
  std::vector<bool> is_h(n, false);
  for (int v = 0; v < n; ++v) is_h[v] = inst.kind(v) == NodeKind::H;
  auto primary = detail::all_paths(gp, t_nodes, is_h);

  // Remove primary edges; secondary candidates: T/H ends, J intermediates.
  Matrix gpp = adj;
  for (const auto& p : primary)
    for (size_t k = 0; k + 1 < p.size(); ++k)
      gpp[p[k]][p[k + 1]] = gpp[p[k + 1]][p[k]] = 0;
  std::vector<int> th_nodes;
  for (int v = 0; v < n; ++v)
    if (inst.kind(v) != NodeKind::J) th_nodes.push_back(v);
  std::vector<bool> is_j(n, false);
  for (int v = 0; v < n; ++v) is_j[v] = inst.kind(v) == NodeKind::J;
  auto candidates = detail::all_paths(gpp, th_nodes, is_j);

  // SelectBestPath.
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (size_t i = 0; i < candidates.size(); ++i)
    groups[{candidates[i].front(), candidates[i].back()}].push_back(
        static_cast<int>(i));

  std::vector<std::vector<int>> secondary;        // selected sequences
  std::vector<std::vector<int>> merged_sets;      // grown by sub merges
  std::vector<int> snumber;
  for (const auto& [key, idxs] : groups) {
    std::vector<int> eligible;
    for (int i : idxs) {
      bool mixed = false;
      for (size_t a = 0; a < candidates[i].size(); ++a)
        for (size_t b = a + 1; b < candidates[i].size(); ++b) {
          const int va = candidates[i][a], vb = candidates[i][b];
          if (inst.kind(va) == NodeKind::J && inst.kind(vb) == NodeKind::J &&
              inst.u_max(va) != inst.u_max(vb))
            mixed = true;
        }
      if (!mixed) eligible.push_back(i);
    }
    if (eligible.empty()) {
      res.reason = InvalidReason::SelectBestPathFail;
      return res;
    }
    int best = eligible.front();
    for (int i : eligible)
      if (candidates[i].size() > candidates[best].size() ||
          (candidates[i].size() == candidates[best].size() &&
           candidates[i] < candidates[best]))
        best = i;
    std::vector<int> merged(candidates[best].begin(), candidates[best].end());
    std::sort(merged.begin(), merged.end());
    int added = 0;
    for (int i : idxs) {
      if (i == best) continue;
      for (int v : candidates[i])
        if (!std::count(merged.begin(), merged.end(), v)) {
          merged.push_back(v);
          ++added;
        }
      std::sort(merged.begin(), merged.end());
    }
    secondary.push_back(candidates[best]);
    merged_sets.push_back(merged);
    snumber.push_back(added);
  }

  // Main path table: primary first, then merged secondary mains.
  struct Main {
    int head, tail;
    std::vector<int> nodes;
    double cap;
    bool primary;
    int snum;
  };
  std::vector<Main> mains;
  for (const auto& p : primary) {
    Main m;
    m.head = p.front();
    m.tail = p.back();
    m.nodes = p;
    std::sort(m.nodes.begin(), m.nodes.end());
    m.cap = std::max(inst.u_max(m.head), inst.u_max(m.tail));
    m.primary = true;
    m.snum = 0;
    mains.push_back(m);
  }
  for (size_t i = 0; i < secondary.size(); ++i) {
    Main m;
    m.head = secondary[i].front();
    m.tail = secondary[i].back();
    m.nodes = merged_sets[i];
    m.cap = std::max(inst.u_max(m.head), inst.u_max(m.tail));
    m.primary = false;
    m.snum = snumber[i];
    mains.push_back(m);
  }

  auto interior_flow = [&](const Main& m, int t) {
    double s = 0.0;
    for (int v : m.nodes)
      if (v != m.head && v != m.tail) s += inst.flow(v, t);
    return s;
  };

  // Utility requirement.
  for (const auto& m : mains)
    for (int t = 0; t < 24; ++t)
      if (interior_flow(m, t) > m.cap) {
        res.reason = InvalidReason::PathUtilization;
        return res;
      }

  // Node u_max cap along each main path.
  for (const auto& m : mains)
    for (int v : m.nodes)
      if (inst.u_max(v) > m.cap) {
        res.reason = InvalidReason::NodeCapExceeded;
        return res;
      }

  // Path length cap.
  for (const auto& m : mains)
    if (static_cast<int>(m.nodes.size()) > inst.path_node_cap) {
      res.reason = InvalidReason::PathTooLong;
      return res;
    }

  // Isolated nodes.
  std::vector<int> deg(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) deg[i] += adj[i][j];
  for (int v = 0; v < n; ++v)
    if (deg[v] == 0) {
      res.reason = InvalidReason::IsolatedNode;
      return res;
    }

  // Connectivity.
  {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (adj[v][w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    for (int v = 0; v < n; ++v)
      if (!seen[v]) {
        res.reason = InvalidReason::Disconnected;
        return res;
      }
  }

  // Degree-1 u_max rule.
  for (int v = 0; v < n; ++v) {
    if (deg[v] != 1) continue;
    for (int w = 0; w < n; ++w)
      if (adj[v][w] && inst.u_max(w) < inst.u_max(v)) {
        res.reason = InvalidReason::HangNodeCap;
        return res;
      }
  }

  if (mains.empty()) {
    res.reason = InvalidReason::SelectBestPathFail;
    return res;
  }

  // Objective.
  const double P = static_cast<double>(mains.size());
  int hits = 0;
  for (const auto& m : mains)
    for (int t = 0; t < 24; ++t) {
      const double f = interior_flow(m, t) / m.cap;
      const double b = inst.benchmark[t];
      const bool hit = b == 0.0 ? f == 0.0 : std::abs(f / b - 1.0) <= inst.params.eps;
      if (hit) ++hits;
    }
  const double term1 = hits / (24.0 * P);

  double ratios = 0.0;
  for (const auto& m : mains) {
    const double nn = static_cast<double>(m.nodes.size());
    int deg1 = 0;
    for (int v : m.nodes) deg1 += deg[v] == 1 ? 1 : 0;
    const double hratio = deg1 / nn;
    const double sratio = m.primary ? 0.0 : m.snum / nn;
    ratios += inst.params.alpha * sratio + inst.params.beta * hratio;
  }
  const double term2 = ratios / P;

  double var_sum = 0.0, var_max = 0.0, var_min = 0.0;
  for (int t = 0; t < 24; ++t) {
    double mean = 0.0;
    for (const auto& m : mains) mean += interior_flow(m, t) / m.cap;
    mean /= P;
    double var = 0.0;
    for (const auto& m : mains) {
      const double f = interior_flow(m, t) / m.cap;
      var += (f - mean) * (f - mean);
    }
    var /= P;
    var_sum += var;
    if (t == 0 || var > var_max) var_max = var;
    if (t == 0 || var < var_min) var_min = var;
  }
  const double term3 = var_sum / 24.0 + var_max + var_min;

  double cost = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int before = inst.x0.has_edge(i, j) ? 1 : 0;
      const int after = adj[i][j];
      if (before == after) continue;
      if (before == 1) {
        cost += inst.params.lambda1;
      } else {
        const double dx = inst.nodes[i].x - inst.nodes[j].x;
        const double dy = inst.nodes[i].y - inst.nodes[j].y;
        cost += inst.params.lambda0 * std::hypot(dx, dy);
      }
    }

  res.valid = true;
  res.reason = InvalidReason::None;
  res.objective = (term1 - term2 - term3) + inst.params.gamma_cost * cost;
  return res;
}

}  // namespace netforge::oracle

#endif
