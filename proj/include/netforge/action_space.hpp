#ifndef NETFORGE_ACTION_SPACE_HPP
#define NETFORGE_ACTION_SPACE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "netforge/instance.hpp"
#include "netforge/rng.hpp"
#include "netforge/topology.hpp"

namespace netforge {

/// Connected component of the same-kind, distance-feasible subgraph.
struct BasicComponent {
  NodeKind kind = NodeKind::H;
  std::vector<int> nodes;  // sorted

  bool operator==(const BasicComponent&) const = default;
};

/// H components first, then J components, each by ascending smallest member.
std::vector<BasicComponent> basic_components(const Instance& inst);

/// Unordered positive compositions of n into k parts, each part list
/// descending, the list in lexicographic order.
std::vector<std::vector<int>> enumerate_compositions(int n, int k);

/// Number of ways to partition n distinct nodes into unlabeled blocks with
/// the given sizes.
uint64_t count_allocations(int n, const std::vector<int>& composition);

/// All set-partitions of the nodes into unlabeled blocks of the given sizes.
/// Blocks are sorted ascending and listed by smallest member.
std::vector<std::vector<std::vector<int>>> enumerate_allocations(
    const std::vector<int>& nodes, const std::vector<int>& composition);

/// All candidate-edge subsets over the sub-component that connect it,
/// ordered by edge count then lexicographic edge list. Exhaustive; limited
/// to small sub-components (throws beyond 9 nodes).
std::vector<std::vector<Edge>> enumerate_intra_wirings(
    const std::vector<int>& nodes, const Instance& inst);

struct SubComponentRef {
  NodeKind kind = NodeKind::J;
  std::vector<int> nodes;              // sorted
  std::pair<int, int> terminals{-1, -1};  // chain ends; (v, v) for singletons
};

/// Edge sets joining the sub-components into one connected whole over
/// candidate edges. An H/J pair is joined end-to-node with two edges
/// (the m(m-1) pattern); a single component needs no edges.
std::vector<std::vector<Edge>> enumerate_inter_wirings(
    const std::vector<SubComponentRef>& comps, const Instance& inst);

/// Steps 1-3 for one component: split count, size composition and the
/// concrete allocation of nodes to blocks.
struct LocalOption {
  int splits = 1;
  std::vector<int> composition;
  std::vector<std::vector<int>> blocks;

  bool operator==(const LocalOption&) const = default;
};

/// Frozen steps 4-5 for one combination of local options.
struct WiringChoice {
  std::vector<std::vector<Edge>> intra;  // aligned with the combo's blocks
  std::vector<Edge> inter;
  bool verified_valid = false;

  bool operator==(const WiringChoice&) const = default;
};

struct CompressedAction {
  std::vector<int> local_choice;  // per component
  int wiring_choice = 0;

  bool operator==(const CompressedAction&) const = default;
};

enum class ActionMode { Full, Compressed };

/// Per-component restrictions applied when building a compressed spec.
struct ComponentRule {
  std::vector<int> allowed_splits;  // empty: 1..|component|
  // Per split count: allowed compositions; missing key: all compositions.
  std::map<int, std::vector<std::vector<int>>> allowed_compositions;
};

struct RestrictionProfile {
  std::vector<ComponentRule> rules;  // aligned with basic_components order
  int wiring_attempt_cap = 256;      // assemble-and-verify tries per combo
  int intra_option_cap = 48;
  int inter_option_cap = 64;
};

class ActionSpaceSpec {
 public:
  ActionMode mode = ActionMode::Compressed;

  // Full mode: bitmask actions over these edges, bit b toggles togglable[b].
  std::vector<Edge> togglable;

  // Compressed mode.
  std::vector<BasicComponent> components;
  std::vector<std::vector<LocalOption>> local_options;  // per component
  std::vector<Edge> anchor_edges;  // kept in every rebuild
  // Per combo (mixed-radix over local options): available wiring choices.
  std::vector<std::vector<WiringChoice>> wiring;

  uint64_t flat_size() const { return flat_size_; }
  bool flat_indexable() const { return flat_indexable_; }
  int full_bits() const { return static_cast<int>(togglable.size()); }

  CompressedAction decode(uint64_t flat) const;
  uint64_t encode(const CompressedAction& action) const;

  /// Next topology for an action. Full mode toggles the current topology;
  /// compressed mode rebuilds from scratch and ignores it.
  Topology apply(const Instance& inst, const Topology& current,
                 uint64_t flat) const;
  Topology apply(const Instance& inst, const CompressedAction& action) const;

  /// Full-mode application for actions wider than 64 bits.
  Topology apply_bits(const Instance& inst, const Topology& current,
                      std::span<const uint64_t> words) const;
  std::vector<uint64_t> sample_bits(Rng& rng) const;
  uint64_t sample_flat(Rng& rng) const;

  /// Flat action rebuilding exactly x0, when x0's structure is in the space.
  std::optional<uint64_t> identity_action(const Instance& inst) const;

  void finalize();  // recompute index tables; call after mutating fields

  uint64_t combo_count() const { return combo_offsets_.empty() ? 0 : combo_offsets_.back(); }
  std::vector<int> combo_of_flat(uint64_t flat, int* wiring_choice) const;

 private:
  friend ActionSpaceSpec build_compressed_spec(const Instance&,
                                               const RestrictionProfile&);
  std::vector<int> unpack_combo(uint64_t combo_index) const;
  uint64_t pack_combo(const std::vector<int>& local_choice) const;

  uint64_t flat_size_ = 0;
  bool flat_indexable_ = true;
  // Prefix sums of wiring-choice counts per combo; size combo_count + 1.
  std::vector<uint64_t> combo_offsets_;
};

ActionSpaceSpec build_full_spec(const Instance& inst);
ActionSpaceSpec build_compressed_spec(const Instance& inst,
                                      const RestrictionProfile& profile);

/// Deterministic feasible chain over the nodes (possibly with extra
/// tree-attachments when a chain is not feasible); empty for singletons.
std::vector<Edge> greedy_chain(const std::vector<int>& nodes,
                               const Instance& inst, int start);

/// Structural split of x0 per basic component: connected blocks of x0's
/// same-kind wiring inside each component.
std::vector<LocalOption> x0_local_structure(const Instance& inst,
                                            const std::vector<BasicComponent>& comps);

}  // namespace netforge

#endif
