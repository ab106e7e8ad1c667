#include "netforge/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace netforge {

Topology Topology::from_edges(int n, std::span<const Edge> edges) {
  Topology t(n);
  for (const auto& [i, j] : edges) t.set_edge(i, j, true);
  return t;
}

Topology Topology::from_matrix(int n, std::span<const uint8_t> row_major) {
  if (static_cast<size_t>(n) * n != row_major.size())
    throw std::invalid_argument("adjacency matrix size mismatch");
  Topology t(n);
  for (int i = 0; i < n; ++i) {
    if (row_major[static_cast<size_t>(i) * n + i])
      throw std::invalid_argument("adjacency matrix has a self-loop at node " +
                                  std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      uint8_t a = row_major[static_cast<size_t>(i) * n + j];
      uint8_t b = row_major[static_cast<size_t>(j) * n + i];
      if ((a != 0) != (b != 0))
        throw std::invalid_argument("adjacency matrix is not symmetric");
      if (a) t.set_edge(i, j, true);
    }
  }
  return t;
}

void Topology::set_edge(int i, int j, bool on) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::invalid_argument("edge endpoint out of range");
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
  adj_[idx(i, j)] = adj_[idx(j, i)] = on ? 1 : 0;
}

int Topology::degree(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("node id out of range");
  int d = 0;
  for (int j = 0; j < n_; ++j) d += adj_[idx(v, j)];
  return d;
}

std::vector<int> Topology::neighbors(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("node id out of range");
  std::vector<int> out;
  for (int j = 0; j < n_; ++j)
    if (adj_[idx(v, j)]) out.push_back(j);
  return out;
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adj_[idx(i, j)]) out.emplace_back(i, j);
  return out;
}

int Topology::edge_count() const {
  int c = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) c += adj_[idx(i, j)];
  return c;
}

uint64_t Topology::hash() const {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(n_));
  uint64_t word = 0;
  int bits = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      word = (word << 1) | adj_[idx(i, j)];
      if (++bits == 64) {
        mix(word);
        word = 0;
        bits = 0;
      }
    }
  if (bits) mix(word);
  return h;
}

int degree(const Topology& t, int v) { return t.degree(v); }

std::vector<int> neighbors(const Topology& t, int v) { return t.neighbors(v); }

std::vector<std::vector<int>> connected_components(
    const Topology& t, const std::function<bool(int)>& keep) {
  const int n = t.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (seen[s] || !keep(s)) continue;
    std::vector<int> comp;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : t.neighbors(v)) {
        if (!seen[w] && keep(w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  // Outer scan is by ascending node id, so components already come out in
  // ascending order of smallest member.
  return comps;
}

std::vector<std::vector<int>> connected_components(const Topology& t) {
  return connected_components(t, [](int) { return true; });
}

Topology toggle_edges(const Topology& x, const Topology& a) {
  if (x.size() != a.size())
    throw std::invalid_argument("toggle_edges: size mismatch");
  Topology out = x;
  for (const auto& [i, j] : a.edges()) out.set_edge(i, j, !x.has_edge(i, j));
  return out;
}

}  // namespace netforge
