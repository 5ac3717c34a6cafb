#pragma once

#include <cstdint>
#include <vector>

#include "statenet/fxp_map.hpp"

namespace statenet {

// Dense successor tables use 4 bytes per node; beyond this the table would
// not fit in memory anyway.
inline constexpr unsigned kMaxNetworkBits = 30;

// The full state-transition network of F_n: node i has the single outgoing
// edge i -> successor[i]. Immutable after construction.
struct StateNetwork {
  ControlParameter mu;
  Precision n;
  QuantizationMode mode;
  std::vector<std::uint32_t> successor;  // size 2^n + 1

  node_t node_count() const { return successor.size(); }
  node_t step(node_t i) const { return successor[i]; }

  friend bool operator==(const StateNetwork&, const StateNetwork&) = default;
};

// One weakly connected component. Every component of an out-degree-1 graph
// contains exactly one cycle; self-loops are cycles of length 1.
struct ComponentInfo {
  std::uint32_t id = 0;
  std::uint64_t node_count = 0;
  std::vector<node_t> cycle;  // successor order, rotated to start at min node
  std::uint64_t cycle_length = 0;
  std::uint64_t max_tail_length = 0;
  node_t min_label = 0;  // smallest member, used as the sort tie-break

  friend bool operator==(const ComponentInfo&, const ComponentInfo&) = default;
};

struct NetworkSummary {
  std::uint64_t component_count = 0;
  std::vector<ComponentInfo> components;  // node_count desc, then min_label asc
  std::vector<node_t> self_loop_nodes;    // ascending
  node_t max_in_degree_node = 0;          // D_n; ties go to the smallest label
  std::uint64_t max_in_degree = 0;

  friend bool operator==(const NetworkSummary&, const NetworkSummary&) = default;
};

// successor[i] = F_n(i) for every i in {0, ..., 2^n}. Requires n >= n_mu and
// n <= kMaxNetworkBits.
StateNetwork build_network(const ControlParameter& mu, Precision n,
                           QuantizationMode mode);

// Partition into maximal weakly connected components (union-find over the
// {i, successor[i]} pairs), each carrying its unique cycle and tail depth.
// Ordered by node_count descending, ties by smallest member label.
std::vector<ComponentInfo> weak_components(const StateNetwork& net);

// All cycles, via three-color successor iteration: one amortized pass over
// the node set. Each cycle is rotated to start at its smallest node; the
// list is sorted by that starting node.
std::vector<std::vector<node_t>> find_cycles(const StateNetwork& net);

// in_degree[v] = number of nodes mapping to v. Sums to 2^n + 1.
std::vector<std::uint32_t> in_degrees(const StateNetwork& net);

// Smallest t >= 0 such that the t-th iterate of i lies on a cycle.
std::uint64_t tail_length(const StateNetwork& net, node_t i);

NetworkSummary summarize(const StateNetwork& net);

}  // namespace statenet
