#ifndef NETFORGE_TOPOLOGY_HPP
#define NETFORGE_TOPOLOGY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace netforge {

using Edge = std::pair<int, int>;  // canonical form: first < second

inline Edge make_edge(int i, int j) { return i < j ? Edge{i, j} : Edge{j, i}; }

/// Symmetric boolean adjacency over n nodes, no self-loops.
class Topology {
 public:
  Topology() = default;
  explicit Topology(int n) : n_(n), adj_(static_cast<size_t>(n) * n, 0) {}

  static Topology from_edges(int n, std::span<const Edge> edges);
  static Topology from_edges(int n, const std::vector<Edge>& edges) {
    return from_edges(n, std::span<const Edge>(edges));
  }
  // Validates symmetry and a zero diagonal; throws std::invalid_argument.
  static Topology from_matrix(int n, std::span<const uint8_t> row_major);

  int size() const { return n_; }
  bool has_edge(int i, int j) const { return adj_[idx(i, j)] != 0; }
  void set_edge(int i, int j, bool on);

  int degree(int v) const;
  std::vector<int> neighbors(int v) const;
  std::vector<Edge> edges() const;
  int edge_count() const;

  bool operator==(const Topology& o) const = default;

  uint64_t hash() const;

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<uint8_t> adj_;
};

int degree(const Topology& t, int v);
std::vector<int> neighbors(const Topology& t, int v);

/// Connected components of the subgraph induced by nodes with keep(v) true,
/// each sorted ascending, listed by ascending smallest member.
std::vector<std::vector<int>> connected_components(
    const Topology& t, const std::function<bool(int)>& keep);
std::vector<std::vector<int>> connected_components(const Topology& t);

/// x'_{ij} = x_{ij} XOR a_{ij}. Both operands must have equal size.
Topology toggle_edges(const Topology& x, const Topology& a);

}  // namespace netforge

#endif
