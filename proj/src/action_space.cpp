#include "netforge/action_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "netforge/evaluator.hpp"

namespace netforge {

namespace {

bool feasible(const Instance& inst, int i, int j) {
  return dist(inst, i, j) <= inst.d_max;
}

Topology feasible_same_kind_graph(const Instance& inst, NodeKind kind) {
  const int n = inst.size();
  Topology g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (inst.kind(i) == kind && inst.kind(j) == kind && feasible(inst, i, j))
        g.set_edge(i, j, true);
  return g;
}

}  // namespace

std::vector<BasicComponent> basic_components(const Instance& inst) {
  std::vector<BasicComponent> out;
  for (NodeKind kind : {NodeKind::H, NodeKind::J}) {
    Topology g = feasible_same_kind_graph(inst, kind);
    auto comps = connected_components(
        g, [&](int v) { return inst.kind(v) == kind; });
    for (auto& c : comps) out.push_back(BasicComponent{kind, std::move(c)});
  }
  return out;
}

std::vector<std::vector<int>> enumerate_compositions(int n, int k) {
  if (k < 1 || k > n)
    throw std::invalid_argument("enumerate_compositions: need 1 <= k <= n");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  // First part ascending gives ascending lexicographic output; parts within
  // a composition stay descending.
  auto rec = [&](auto&& self, int pos, int remaining, int prev) -> void {
    if (pos == k - 1) {
      if (remaining <= prev) {
        cur[pos] = remaining;
        auto parts = cur;
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        out.push_back(parts);
      }
      return;
    }
    const int parts_left = k - pos;
    int lo = (remaining + parts_left - 1) / parts_left;  // ceil
    int hi = std::min(prev, remaining - (parts_left - 1));
    for (int p = lo; p <= hi; ++p) {
      cur[pos] = p;
      self(self, pos + 1, remaining - p, p);
    }
  };
  rec(rec, 0, n, n);
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t count_allocations(int n, const std::vector<int>& composition) {
  int total = 0;
  for (int s : composition) {
    if (s < 1) throw std::invalid_argument("count_allocations: bad block size");
    total += s;
  }
  if (total != n)
    throw std::invalid_argument("count_allocations: sizes must sum to n");

  auto binom = [](uint64_t m, uint64_t r) {
    uint64_t acc = 1;
    for (uint64_t i = 1; i <= r; ++i) acc = acc * (m - r + i) / i;
    return acc;
  };

  std::vector<int> sizes = composition;
  std::sort(sizes.begin(), sizes.end(), std::greater<int>());
  uint64_t ways = 1;
  int remaining = n;
  for (int s : sizes) {
    ways *= binom(remaining, s);
    remaining -= s;
  }
  // Blocks of equal size are unlabeled.
  for (size_t i = 0; i < sizes.size();) {
    size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    uint64_t fact = 1;
    for (size_t m = 2; m <= j - i; ++m) fact *= m;
    ways /= fact;
    i = j;
  }
  return ways;
}

namespace {

void subsets_of_size(const std::vector<int>& pool, int want,
                     std::vector<int>& cur, size_t from,
                     const std::function<void(const std::vector<int>&)>& emit) {
  if (want == 0) {
    emit(cur);
    return;
  }
  for (size_t i = from; i < pool.size(); ++i) {
    if (pool.size() - i < static_cast<size_t>(want)) break;
    cur.push_back(pool[i]);
    subsets_of_size(pool, want - 1, cur, i + 1, emit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::vector<int>>> enumerate_allocations(
    const std::vector<int>& nodes, const std::vector<int>& composition) {
  int total = 0;
  for (int s : composition) total += s;
  if (total != static_cast<int>(nodes.size()))
    throw std::invalid_argument(
        "enumerate_allocations: composition does not match node count");

  std::vector<int> sorted_nodes = nodes;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());

  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;

  auto rec = [&](auto&& self, std::vector<int> unused,
                 std::multiset<int, std::greater<int>> sizes) -> void {
    if (unused.empty()) {
      out.push_back(cur);
      return;
    }
    const int v = unused.front();
    std::vector<int> rest(unused.begin() + 1, unused.end());
    int prev_size = -1;
    for (int s : sizes) {
      if (s == prev_size) continue;  // unlabeled equal-size blocks
      prev_size = s;
      std::vector<int> pick;
      subsets_of_size(rest, s - 1, pick, 0, [&](const std::vector<int>& more) {
        std::vector<int> block{v};
        block.insert(block.end(), more.begin(), more.end());
        std::vector<int> next_unused;
        std::set_difference(unused.begin(), unused.end(), block.begin(),
                            block.end(), std::back_inserter(next_unused));
        auto next_sizes = sizes;
        next_sizes.erase(next_sizes.find(s));
        cur.push_back(block);
        self(self, next_unused, next_sizes);
        cur.pop_back();
      });
    }
  };

  rec(rec, sorted_nodes,
      std::multiset<int, std::greater<int>>(composition.begin(),
                                            composition.end()));
  return out;
}

std::vector<std::vector<Edge>> enumerate_intra_wirings(
    const std::vector<int>& nodes, const Instance& inst) {
  if (nodes.empty())
    throw std::invalid_argument("enumerate_intra_wirings: empty sub-component");
  if (nodes.size() == 1) return {{}};
  if (nodes.size() > 9)
    throw std::invalid_argument(
        "enumerate_intra_wirings: exhaustive enumeration is limited to 9 nodes");

  std::vector<int> s = nodes;
  std::sort(s.begin(), s.end());
  std::vector<Edge> pool;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b)
      if (feasible(inst, s[a], s[b])) pool.emplace_back(s[a], s[b]);
  if (pool.size() > 20)
    throw std::invalid_argument(
        "enumerate_intra_wirings: too many feasible edges to enumerate");

  std::map<int, int> index_of;
  for (size_t i = 0; i < s.size(); ++i) index_of[s[i]] = static_cast<int>(i);

  std::vector<std::vector<Edge>> out;
  const uint64_t lim = 1ull << pool.size();
  for (uint64_t mask = 0; mask < lim; ++mask) {
    // Union-find connectivity over the sub-component.
    std::vector<int> parent(s.size());
    for (size_t i = 0; i < s.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    int merges = 0;
    for (size_t b = 0; b < pool.size(); ++b) {
      if (!(mask & (1ull << b))) continue;
      int ra = find(index_of[pool[b].first]);
      int rb = find(index_of[pool[b].second]);
      if (ra != rb) {
        parent[ra] = rb;
        ++merges;
      }
    }
    if (merges != static_cast<int>(s.size()) - 1) continue;
    std::vector<Edge> wiring;
    for (size_t b = 0; b < pool.size(); ++b)
      if (mask & (1ull << b)) wiring.push_back(pool[b]);
    out.push_back(std::move(wiring));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const std::vector<Edge>& a, const std::vector<Edge>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return out;
}

std::vector<std::vector<Edge>> enumerate_inter_wirings(
    const std::vector<SubComponentRef>& comps, const Instance& inst) {
  if (comps.size() <= 1) return {{}};

  if (comps.size() == 2 && comps[0].kind != comps[1].kind) {
    const auto& jc = comps[0].kind == NodeKind::J ? comps[0] : comps[1];
    const auto& hc = comps[0].kind == NodeKind::J ? comps[1] : comps[0];
    const auto [e1, e2] = jc.terminals;
    std::vector<std::vector<Edge>> out;
    if (e1 == e2) {
      for (int h : hc.nodes)
        if (feasible(inst, e1, h)) out.push_back({make_edge(e1, h)});
    } else {
      for (int h1 : hc.nodes)
        for (int h2 : hc.nodes) {
          if (h1 == h2) continue;
          if (feasible(inst, e1, h1) && feasible(inst, e2, h2))
            out.push_back({make_edge(e1, h1), make_edge(e2, h2)});
        }
    }
    return out;
  }

  // General case: attach each later component to the union of earlier ones
  // with one feasible edge; options multiply.
  std::vector<std::vector<Edge>> acc{{}};
  std::vector<int> joined = comps[0].nodes;
  for (size_t c = 1; c < comps.size(); ++c) {
    std::vector<Edge> links;
    for (int u : comps[c].nodes)
      for (int v : joined)
        if (feasible(inst, u, v)) links.push_back(make_edge(u, v));
    if (links.empty()) return {};
    std::sort(links.begin(), links.end());
    std::vector<std::vector<Edge>> next;
    for (const auto& base : acc)
      for (const auto& l : links) {
        auto w = base;
        w.push_back(l);
        next.push_back(std::move(w));
      }
    acc = std::move(next);
    joined.insert(joined.end(), comps[c].nodes.begin(), comps[c].nodes.end());
  }
  return acc;
}

std::vector<Edge> greedy_chain(const std::vector<int>& nodes,
                               const Instance& inst, int start) {
  if (nodes.size() <= 1) return {};
  std::vector<int> pool = nodes;
  std::sort(pool.begin(), pool.end());
  if (!std::count(pool.begin(), pool.end(), start)) start = pool.front();

  std::vector<Edge> edges;
  std::vector<int> chain{start};
  std::set<int> used{start};
  while (used.size() < pool.size()) {
    const int tip = chain.back();
    int best = -1;
    double best_d = 0.0;
    for (int v : pool) {
      if (used.count(v) || !feasible(inst, tip, v)) continue;
      const double d = dist(inst, tip, v);
      if (best < 0 || d < best_d || (d == best_d && v < best)) {
        best = v;
        best_d = d;
      }
    }
    if (best >= 0) {
      edges.push_back(make_edge(tip, best));
      chain.push_back(best);
      used.insert(best);
      continue;
    }
    // Chain cannot extend; attach the nearest leftover to any used node.
    int from = -1, to = -1;
    double fd = 0.0;
    for (int v : pool) {
      if (used.count(v)) continue;
      for (int u : used) {
        if (!feasible(inst, u, v)) continue;
        const double d = dist(inst, u, v);
        if (to < 0 || d < fd || (d == fd && (v < to || (v == to && u < from)))) {
          from = u;
          to = v;
          fd = d;
        }
      }
    }
    if (to < 0) break;  // leftovers unreachable; leave them unwired
    edges.push_back(make_edge(from, to));
    used.insert(to);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

std::pair<int, int> terminals_of(const std::vector<int>& nodes,
                                 const std::vector<Edge>& wiring) {
  if (nodes.size() == 1) return {nodes[0], nodes[0]};
  std::map<int, int> deg;
  for (int v : nodes) deg[v] = 0;
  for (const auto& [a, b] : wiring) {
    ++deg[a];
    ++deg[b];
  }
  std::vector<int> leaves;
  for (int v : nodes)
    if (deg[v] <= 1) leaves.push_back(v);
  if (leaves.size() >= 2) return {leaves.front(), leaves.back()};
  if (leaves.size() == 1) return {leaves[0], leaves[0]};
  return {nodes.front(), nodes.back()};  // cycle: fall back to extremes
}

struct SubComp {
  NodeKind kind;
  std::vector<int> nodes;
};

std::vector<SubComp> sub_components(const ActionSpaceSpec& spec,
                                    const std::vector<int>& local_choice) {
  std::vector<SubComp> subs;
  for (size_t c = 0; c < spec.components.size(); ++c) {
    const auto& opt = spec.local_options[c][local_choice[c]];
    for (const auto& block : opt.blocks)
      subs.push_back(SubComp{spec.components[c].kind, block});
  }
  return subs;
}

std::vector<std::vector<Edge>> intra_candidates(const Instance& inst,
                                                const SubComp& sub, int cap) {
  if (sub.nodes.size() == 1) return {{}};
  std::vector<std::vector<Edge>> out;
  auto push_unique = [&out](std::vector<Edge> w) {
    std::sort(w.begin(), w.end());
    if (!std::count(out.begin(), out.end(), w)) out.push_back(std::move(w));
  };
  for (int start : sub.nodes) push_unique(greedy_chain(sub.nodes, inst, start));
  if (sub.nodes.size() <= 6) {
    for (auto& w : enumerate_intra_wirings(sub.nodes, inst)) {
      if (static_cast<int>(out.size()) >= cap) break;
      push_unique(std::move(w));
    }
  }
  if (out.empty()) out.push_back({});
  if (static_cast<int>(out.size()) > cap) out.resize(cap);
  return out;
}

// Attachment options for one sub-component given its wired terminals.
// H blocks attach their ends to T nodes (every H needs two T/H edges);
// J blocks attach to T or H nodes, or lean on anchor edges alone.
std::vector<std::vector<Edge>> attach_candidates(
    const Instance& inst, const SubComp& sub, std::pair<int, int> terminals,
    bool touches_anchor, int cap) {
  std::vector<int> t_nodes, th_nodes;
  for (int v = 0; v < inst.size(); ++v) {
    if (inst.kind(v) == NodeKind::T) t_nodes.push_back(v);
    if (inst.kind(v) != NodeKind::J) th_nodes.push_back(v);
  }
  const auto [e1, e2] = terminals;
  struct Option {
    double d;
    std::vector<Edge> edges;
  };
  std::vector<Option> opts;

  if (sub.kind == NodeKind::H) {
    if (e1 == e2) {
      for (int t1 : t_nodes)
        for (int t2 : t_nodes) {
          if (t1 >= t2) continue;
          if (feasible(inst, e1, t1) && feasible(inst, e1, t2))
            opts.push_back({dist(inst, e1, t1) + dist(inst, e1, t2),
                            {make_edge(e1, t1), make_edge(e1, t2)}});
        }
    } else {
      for (int t1 : t_nodes)
        for (int t2 : t_nodes) {
          if (t1 == t2) continue;
          if (feasible(inst, e1, t1) && feasible(inst, e2, t2))
            opts.push_back({dist(inst, e1, t1) + dist(inst, e2, t2),
                            {make_edge(e1, t1), make_edge(e2, t2)}});
        }
    }
  } else {
    if (touches_anchor) opts.push_back({0.0, {}});
    if (e1 == e2) {
      for (int a1 : th_nodes)
        for (int a2 : th_nodes) {
          if (a1 >= a2) continue;
          if (feasible(inst, e1, a1) && feasible(inst, e1, a2))
            opts.push_back({dist(inst, e1, a1) + dist(inst, e1, a2),
                            {make_edge(e1, a1), make_edge(e1, a2)}});
        }
      for (int a : th_nodes)
        if (feasible(inst, e1, a))
          opts.push_back({1e9 + dist(inst, e1, a), {make_edge(e1, a)}});
    } else {
      for (int a1 : th_nodes)
        for (int a2 : th_nodes) {
          if (a1 == a2) continue;
          if (feasible(inst, e1, a1) && feasible(inst, e2, a2))
            opts.push_back({dist(inst, e1, a1) + dist(inst, e2, a2),
                            {make_edge(e1, a1), make_edge(e2, a2)}});
        }
      for (int a : th_nodes) {
        if (feasible(inst, e1, a))
          opts.push_back({1e9 + dist(inst, e1, a), {make_edge(e1, a)}});
        if (feasible(inst, e2, a))
          opts.push_back({2e9 + dist(inst, e2, a), {make_edge(e2, a)}});
      }
    }
  }
  std::stable_sort(opts.begin(), opts.end(),
                   [](const Option& a, const Option& b) {
                     if (a.d != b.d) return a.d < b.d;
                     return a.edges < b.edges;
                   });
  std::vector<std::vector<Edge>> out;
  for (auto& o : opts) {
    out.push_back(std::move(o.edges));
    if (static_cast<int>(out.size()) >= cap) break;
  }
  if (out.empty()) out.push_back({});
  return out;
}

Topology assemble(const Instance& inst, const std::vector<Edge>& anchors,
                  const std::vector<SubComp>& subs,
                  const std::vector<std::vector<Edge>>& intra,
                  const std::vector<std::vector<Edge>>& attach) {
  Topology topo(inst.size());
  for (const auto& [i, j] : anchors) topo.set_edge(i, j, true);
  for (const auto& w : intra)
    for (const auto& [i, j] : w) topo.set_edge(i, j, true);
  for (const auto& w : attach)
    for (const auto& [i, j] : w) topo.set_edge(i, j, true);
  (void)subs;
  return topo;
}

WiringChoice search_wiring(const Instance& inst, const ActionSpaceSpec& spec,
                           const std::vector<int>& local_choice,
                           const RestrictionProfile& profile) {
  const auto subs = sub_components(spec, local_choice);
  std::vector<std::vector<std::vector<Edge>>> intra_lists;
  for (const auto& s : subs)
    intra_lists.push_back(
        intra_candidates(inst, s, profile.intra_option_cap));

  std::set<int> anchored;
  for (const auto& [i, j] : spec.anchor_edges) {
    anchored.insert(i);
    anchored.insert(j);
  }

  int attempts = 0;
  WiringChoice fallback;
  bool have_fallback = false;

  std::vector<size_t> ii(subs.size(), 0);  // intra odometer
  while (true) {
    std::vector<std::vector<Edge>> intra;
    for (size_t s = 0; s < subs.size(); ++s) intra.push_back(intra_lists[s][ii[s]]);

    std::vector<std::vector<std::vector<Edge>>> attach_lists;
    for (size_t s = 0; s < subs.size(); ++s) {
      bool touches = std::any_of(subs[s].nodes.begin(), subs[s].nodes.end(),
                                 [&](int v) { return anchored.count(v) > 0; });
      attach_lists.push_back(
          attach_candidates(inst, subs[s], terminals_of(subs[s].nodes, intra[s]),
                            touches, profile.inter_option_cap));
    }

    std::vector<size_t> ai(subs.size(), 0);
    while (true) {
      std::vector<std::vector<Edge>> attach;
      for (size_t s = 0; s < subs.size(); ++s)
        attach.push_back(attach_lists[s][ai[s]]);

      Topology topo = assemble(inst, spec.anchor_edges, subs, intra, attach);
      WiringChoice choice;
      choice.intra = intra;
      for (const auto& w : attach)
        choice.inter.insert(choice.inter.end(), w.begin(), w.end());
      std::sort(choice.inter.begin(), choice.inter.end());

      if (!have_fallback) {
        fallback = choice;
        have_fallback = true;
      }
      if (verify(inst, topo).valid) {
        choice.verified_valid = true;
        return choice;
      }
      if (++attempts >= profile.wiring_attempt_cap) return fallback;

      // Advance the attachment odometer, last dimension fastest.
      size_t d = subs.size();
      while (d > 0) {
        --d;
        if (++ai[d] < attach_lists[d].size()) break;
        ai[d] = 0;
        if (d == 0) goto next_intra;
      }
      if (subs.empty()) goto next_intra;
    }
  next_intra: {
      size_t d = subs.size();
      bool advanced = false;
      while (d > 0) {
        --d;
        if (++ii[d] < intra_lists[d].size()) {
          advanced = true;
          break;
        }
        ii[d] = 0;
      }
      if (!advanced) return fallback;
    }
  }
}

}  // namespace

std::vector<LocalOption> x0_local_structure(
    const Instance& inst, const std::vector<BasicComponent>& comps) {
  std::vector<LocalOption> out;
  for (const auto& comp : comps) {
    std::set<int> members(comp.nodes.begin(), comp.nodes.end());
    Topology g(inst.size());
    for (const auto& [i, j] : inst.x0.edges())
      if (members.count(i) && members.count(j)) g.set_edge(i, j, true);
    auto blocks = connected_components(
        g, [&](int v) { return members.count(v) > 0; });
    LocalOption opt;
    opt.splits = static_cast<int>(blocks.size());
    for (const auto& b : blocks) opt.composition.push_back(static_cast<int>(b.size()));
    std::sort(opt.composition.begin(), opt.composition.end(),
              std::greater<int>());
    opt.blocks = std::move(blocks);
    out.push_back(std::move(opt));
  }
  return out;
}

ActionSpaceSpec build_full_spec(const Instance& inst) {
  ActionSpaceSpec spec;
  spec.mode = ActionMode::Full;
  spec.togglable = candidate_edges(inst);
  spec.finalize();
  return spec;
}

ActionSpaceSpec build_compressed_spec(const Instance& inst,
                                      const RestrictionProfile& profile) {
  ActionSpaceSpec spec;
  spec.mode = ActionMode::Compressed;
  spec.components = basic_components(inst);

  for (const auto& [i, j] : inst.x0.edges()) {
    const bool ti = inst.kind(i) == NodeKind::T;
    const bool tj = inst.kind(j) == NodeKind::T;
    if (!ti && !tj) continue;
    const NodeKind other = ti ? inst.kind(j) : inst.kind(i);
    if (other == NodeKind::H) continue;  // H attachment is decided per action
    spec.anchor_edges.emplace_back(i, j);
  }
  std::sort(spec.anchor_edges.begin(), spec.anchor_edges.end());

  spec.local_options.resize(spec.components.size());
  for (size_t c = 0; c < spec.components.size(); ++c) {
    const auto& comp = spec.components[c];
    const int n = static_cast<int>(comp.nodes.size());
    ComponentRule rule;
    if (c < profile.rules.size()) rule = profile.rules[c];

    std::vector<int> splits = rule.allowed_splits;
    if (splits.empty())
      for (int m = 1; m <= n; ++m) splits.push_back(m);

    for (int m : splits) {
      if (m < 1 || m > n) continue;
      std::vector<std::vector<int>> comps_for_m;
      auto it = rule.allowed_compositions.find(m);
      if (it != rule.allowed_compositions.end())
        comps_for_m = it->second;
      else
        comps_for_m = enumerate_compositions(n, m);
      for (const auto& composition : comps_for_m) {
        for (auto& blocks : enumerate_allocations(comp.nodes, composition)) {
          LocalOption opt;
          opt.splits = m;
          opt.composition = composition;
          opt.blocks = std::move(blocks);
          spec.local_options[c].push_back(std::move(opt));
        }
      }
    }
    if (spec.local_options[c].empty())
      throw std::invalid_argument(
          "build_compressed_spec: a component has no allowed options");
  }

  uint64_t combos = 1;
  for (const auto& opts : spec.local_options) combos *= opts.size();

  // The initial topology's own structure, when representable, keeps its
  // exact wiring so that the identity action reproduces x0.
  auto ident = x0_local_structure(inst, spec.components);
  std::optional<uint64_t> ident_combo;
  {
    std::vector<int> choice(spec.components.size(), -1);
    bool all = true;
    for (size_t c = 0; c < spec.components.size(); ++c) {
      for (size_t o = 0; o < spec.local_options[c].size(); ++o)
        if (spec.local_options[c][o].blocks == ident[c].blocks) {
          choice[c] = static_cast<int>(o);
          break;
        }
      if (choice[c] < 0) all = false;
    }
    if (all && !spec.components.empty()) {
      uint64_t idx = 0;
      for (size_t c = 0; c < choice.size(); ++c)
        idx = idx * spec.local_options[c].size() + choice[c];
      ident_combo = idx;
    }
  }

  spec.wiring.resize(combos);
  for (uint64_t combo = 0; combo < combos; ++combo) {
    std::vector<int> local_choice(spec.components.size());
    uint64_t rem = combo;
    for (size_t c = spec.components.size(); c-- > 0;) {
      local_choice[c] = static_cast<int>(rem % spec.local_options[c].size());
      rem /= spec.local_options[c].size();
    }

    if (ident_combo && combo == *ident_combo) {
      WiringChoice choice;
      const auto subs = sub_components(spec, local_choice);
      std::set<Edge> anchor_set(spec.anchor_edges.begin(),
                                spec.anchor_edges.end());
      for (const auto& s : subs) {
        std::set<int> members(s.nodes.begin(), s.nodes.end());
        std::vector<Edge> w;
        for (const auto& e : inst.x0.edges())
          if (members.count(e.first) && members.count(e.second)) w.push_back(e);
        choice.intra.push_back(std::move(w));
      }
      for (const auto& e : inst.x0.edges()) {
        if (anchor_set.count(e)) continue;
        const NodeKind a = inst.kind(e.first), b = inst.kind(e.second);
        if (a != b) choice.inter.push_back(e);  // T-H and H-J links
      }
      std::sort(choice.inter.begin(), choice.inter.end());
      choice.verified_valid = true;
      spec.wiring[combo] = {std::move(choice)};
      continue;
    }

    spec.wiring[combo] = {search_wiring(inst, spec, local_choice, profile)};
  }

  spec.finalize();
  return spec;
}

void ActionSpaceSpec::finalize() {
  if (mode == ActionMode::Full) {
    const int bits = full_bits();
    flat_indexable_ = bits <= 63;
    flat_size_ = flat_indexable_ ? (1ull << bits) : 0;
    combo_offsets_.clear();
    return;
  }
  combo_offsets_.assign(1, 0);
  for (const auto& w : wiring)
    combo_offsets_.push_back(combo_offsets_.back() + w.size());
  flat_size_ = combo_offsets_.back();
  flat_indexable_ = true;
}

std::vector<int> ActionSpaceSpec::unpack_combo(uint64_t combo_index) const {
  std::vector<int> choice(components.size());
  for (size_t c = components.size(); c-- > 0;) {
    choice[c] = static_cast<int>(combo_index % local_options[c].size());
    combo_index /= local_options[c].size();
  }
  return choice;
}

uint64_t ActionSpaceSpec::pack_combo(const std::vector<int>& local_choice) const {
  if (local_choice.size() != components.size())
    throw std::invalid_argument("action has wrong component count");
  uint64_t idx = 0;
  for (size_t c = 0; c < components.size(); ++c) {
    if (local_choice[c] < 0 ||
        local_choice[c] >= static_cast<int>(local_options[c].size()))
      throw std::invalid_argument("local choice out of range");
    idx = idx * local_options[c].size() + local_choice[c];
  }
  return idx;
}

std::vector<int> ActionSpaceSpec::combo_of_flat(uint64_t flat,
                                                int* wiring_choice) const {
  if (flat >= flat_size_) throw std::invalid_argument("flat index out of range");
  const auto it =
      std::upper_bound(combo_offsets_.begin(), combo_offsets_.end(), flat);
  const uint64_t combo = static_cast<uint64_t>(it - combo_offsets_.begin()) - 1;
  if (wiring_choice)
    *wiring_choice = static_cast<int>(flat - combo_offsets_[combo]);
  return unpack_combo(combo);
}

CompressedAction ActionSpaceSpec::decode(uint64_t flat) const {
  if (mode != ActionMode::Compressed)
    throw std::invalid_argument("decode: spec is not compressed");
  CompressedAction a;
  a.local_choice = combo_of_flat(flat, &a.wiring_choice);
  return a;
}

uint64_t ActionSpaceSpec::encode(const CompressedAction& action) const {
  if (mode != ActionMode::Compressed)
    throw std::invalid_argument("encode: spec is not compressed");
  const uint64_t combo = pack_combo(action.local_choice);
  if (action.wiring_choice < 0 ||
      static_cast<uint64_t>(action.wiring_choice) >=
          combo_offsets_[combo + 1] - combo_offsets_[combo])
    throw std::invalid_argument("wiring choice out of range");
  return combo_offsets_[combo] + action.wiring_choice;
}

Topology ActionSpaceSpec::apply(const Instance& inst,
                                const CompressedAction& action) const {
  const uint64_t combo = pack_combo(action.local_choice);
  const auto& choice = wiring[combo][action.wiring_choice];
  Topology topo(inst.size());
  for (const auto& [i, j] : anchor_edges) topo.set_edge(i, j, true);
  for (const auto& w : choice.intra)
    for (const auto& [i, j] : w) topo.set_edge(i, j, true);
  for (const auto& [i, j] : choice.inter) topo.set_edge(i, j, true);
  return topo;
}

Topology ActionSpaceSpec::apply(const Instance& inst, const Topology& current,
                                uint64_t flat) const {
  if (mode == ActionMode::Compressed) return apply(inst, decode(flat));
  if (!flat_indexable_)
    throw std::invalid_argument("apply: full space too wide for flat indexing");
  Topology next = current;
  for (size_t b = 0; b < togglable.size(); ++b)
    if (flat & (1ull << b)) {
      const auto& [i, j] = togglable[b];
      next.set_edge(i, j, !current.has_edge(i, j));
    }
  return next;
}

Topology ActionSpaceSpec::apply_bits(const Instance& inst,
                                     const Topology& current,
                                     std::span<const uint64_t> words) const {
  if (mode != ActionMode::Full)
    throw std::invalid_argument("apply_bits: spec is not full-mode");
  (void)inst;
  Topology next = current;
  for (size_t b = 0; b < togglable.size(); ++b) {
    const uint64_t word = words[b / 64];
    if (word & (1ull << (b % 64))) {
      const auto& [i, j] = togglable[b];
      next.set_edge(i, j, !current.has_edge(i, j));
    }
  }
  return next;
}

std::vector<uint64_t> ActionSpaceSpec::sample_bits(Rng& rng) const {
  const size_t words = (togglable.size() + 63) / 64;
  std::vector<uint64_t> out(words, 0);
  for (size_t w = 0; w < words; ++w) out[w] = rng.next_u64();
  const size_t tail = togglable.size() % 64;
  if (!out.empty() && tail != 0) out.back() &= (1ull << tail) - 1;
  return out;
}

uint64_t ActionSpaceSpec::sample_flat(Rng& rng) const {
  if (!flat_indexable_ || flat_size_ == 0)
    throw std::invalid_argument("sample_flat: space is not flat-indexable");
  return rng.uniform_int(flat_size_);
}

std::optional<uint64_t> ActionSpaceSpec::identity_action(
    const Instance& inst) const {
  if (mode != ActionMode::Compressed) return std::nullopt;
  auto ident = x0_local_structure(inst, components);
  std::vector<int> choice(components.size(), -1);
  for (size_t c = 0; c < components.size(); ++c) {
    for (size_t o = 0; o < local_options[c].size(); ++o)
      if (local_options[c][o].blocks == ident[c].blocks) {
        choice[c] = static_cast<int>(o);
        break;
      }
    if (choice[c] < 0) return std::nullopt;
  }
  const uint64_t combo = pack_combo(choice);
  for (uint64_t w = 0; w < combo_offsets_[combo + 1] - combo_offsets_[combo];
       ++w) {
    CompressedAction a;
    a.local_choice = choice;
    a.wiring_choice = static_cast<int>(w);
    if (apply(inst, a) == inst.x0) return encode(a);
  }
  return std::nullopt;
}

}  // namespace netforge
