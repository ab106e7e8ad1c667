#include "netforge/path_engine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace netforge {

void Path::canonicalize() {
  if (nodes.size() >= 2 && nodes.front() > nodes.back())
    std::reverse(nodes.begin(), nodes.end());
}

bool path_order(const Path& a, const Path& b) {
  if (a.head() != b.head()) return a.head() < b.head();
  if (a.tail() != b.tail()) return a.tail() < b.tail();
  return a.nodes < b.nodes;
}

namespace {

// Exhaustive simple-path search between two ends, intermediates restricted by
// a predicate, at most max_nodes nodes per path (0 = unbounded).
void search_paths(const Topology& topo, int src, int dst,
                  const std::function<bool(int)>& intermediate_ok,
                  int max_nodes, std::vector<Path>& out) {
  std::vector<int> walk{src};
  std::vector<char> used(topo.size(), 0);
  used[src] = 1;

  auto dfs = [&](auto&& self, int v) -> void {
    for (int w : topo.neighbors(v)) {
      if (used[w]) continue;
      if (w == dst) {
        Path p;
        p.nodes = walk;
        p.nodes.push_back(dst);
        p.canonicalize();
        out.push_back(std::move(p));
        continue;
      }
      if (!intermediate_ok(w)) continue;
      if (max_nodes > 0 && static_cast<int>(walk.size()) + 2 > max_nodes)
        continue;
      used[w] = 1;
      walk.push_back(w);
      self(self, w);
      walk.pop_back();
      used[w] = 0;
    }
  };
  dfs(dfs, src);
}

}  // namespace

PrimaryMainResult enumerate_primary_main(const Instance& inst,
                                         const Topology& topo) {
  PrimaryMainResult res;
  const int n = inst.size();

  // Subgraph induced by T/H nodes.
  Topology gp(n);
  for (const auto& [i, j] : topo.edges())
    if (inst.kind(i) != NodeKind::J && inst.kind(j) != NodeKind::J)
      gp.set_edge(i, j, true);

  for (int v = 0; v < n; ++v) {
    if (inst.kind(v) == NodeKind::H && gp.degree(v) != 2) {
      res.bad_node = v;
      return res;
    }
  }

  std::vector<int> t_nodes;
  for (int v = 0; v < n; ++v)
    if (inst.kind(v) == NodeKind::T) t_nodes.push_back(v);

  auto is_h = [&inst](int v) { return inst.kind(v) == NodeKind::H; };
  for (size_t a = 0; a < t_nodes.size(); ++a)
    for (size_t b = a + 1; b < t_nodes.size(); ++b)
      search_paths(gp, t_nodes[a], t_nodes[b], is_h, 0, res.paths);

  std::sort(res.paths.begin(), res.paths.end(), path_order);
  res.ok = true;
  return res;
}

std::vector<Path> enumerate_secondary_candidates(
    const Instance& inst, const Topology& topo,
    const std::vector<Path>& primary) {
  const int n = inst.size();

  Topology gpp = topo;
  for (const Path& p : primary)
    for (size_t k = 0; k + 1 < p.nodes.size(); ++k)
      gpp.set_edge(p.nodes[k], p.nodes[k + 1], false);

  std::vector<int> ends;
  for (int v = 0; v < n; ++v)
    if (inst.kind(v) != NodeKind::J) ends.push_back(v);

  auto is_j = [&inst](int v) { return inst.kind(v) == NodeKind::J; };
  std::vector<Path> out;
  const int max_nodes = inst.path_node_cap + 1;
  for (size_t a = 0; a < ends.size(); ++a)
    for (size_t b = a + 1; b < ends.size(); ++b)
      search_paths(gpp, ends[a], ends[b], is_j, max_nodes, out);

  std::sort(out.begin(), out.end(), path_order);
  return out;
}

SelectBestPathResult select_best_path(const std::vector<Path>& candidates,
                                      const Instance& inst) {
  SelectBestPathResult res;

  std::map<Edge, std::vector<int>> groups;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Path& p = candidates[i];
    groups[make_edge(p.head(), p.tail())].push_back(static_cast<int>(i));
  }

  auto mixed_j_umax = [&inst](const Path& p) {
    double seen = -1.0;
    for (int v : p.nodes) {
      if (inst.kind(v) != NodeKind::J) continue;
      if (seen < 0.0)
        seen = inst.u_max(v);
      else if (inst.u_max(v) != seen)
        return true;
    }
    return false;
  };

  for (const auto& [key, idxs] : groups) {
    std::vector<int> eligible, demoted;
    for (int i : idxs)
      (mixed_j_umax(candidates[i]) ? demoted : eligible).push_back(i);

    if (eligible.empty()) {
      res.failed_group = key;
      return res;
    }

    int best = eligible[0];
    for (int i : eligible) {
      if (candidates[i].length() > candidates[best].length() ||
          (candidates[i].length() == candidates[best].length() &&
           candidates[i].nodes < candidates[best].nodes))
        best = i;
    }

    const int main_idx = static_cast<int>(res.secondary_main.size());
    res.secondary_main.push_back(candidates[best]);
    for (int i : idxs) {
      if (i == best) continue;
      res.attachments.emplace_back(main_idx,
                                   static_cast<int>(res.sub_paths.size()));
      res.sub_paths.push_back(candidates[i]);
    }
  }
  res.ok = true;
  return res;
}

std::vector<int> find_hang_nodes(const Topology& topo,
                                 const PathDecomposition& dec) {
  std::set<int> interior;
  auto add_interior = [&interior](const Path& p) {
    for (size_t k = 1; k + 1 < p.nodes.size(); ++k) interior.insert(p.nodes[k]);
  };
  for (const Path& p : dec.primary_main) add_interior(p);
  for (const Path& p : dec.secondary_main) add_interior(p);
  for (const Path& p : dec.sub_paths) add_interior(p);

  std::vector<int> out;
  for (int v = 0; v < topo.size(); ++v) {
    if (topo.degree(v) != 1) continue;
    if (interior.count(topo.neighbors(v)[0])) out.push_back(v);
  }
  return out;
}

}  // namespace netforge
