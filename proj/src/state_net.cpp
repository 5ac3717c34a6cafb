#include "statenet/state_net.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace statenet {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

void require_valid_node(const StateNetwork& net, node_t i) {
  if (i >= net.node_count()) {
    throw std::domain_error("node label " + std::to_string(i) +
                            " outside [0, " +
                            std::to_string(net.node_count() - 1) + "]");
  }
}

// Union-find with path halving over node indices.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Depth of every node above its component's cycle (0 on the cycle itself).
std::vector<std::uint32_t> tail_depths(const StateNetwork& net,
                                       const std::vector<std::vector<node_t>>& cycles) {
  const std::size_t count = net.successor.size();
  std::vector<std::uint32_t> depth(count, kUnset);
  for (const auto& cycle : cycles) {
    for (node_t c : cycle) depth[c] = 0;
  }
  std::vector<std::uint32_t> path;
  for (std::size_t i = 0; i < count; ++i) {
    if (depth[i] != kUnset) continue;
    path.clear();
    std::uint32_t x = static_cast<std::uint32_t>(i);
    while (depth[x] == kUnset) {
      path.push_back(x);
      x = net.successor[x];
    }
    std::uint32_t d = depth[x];
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = ++d;
  }
  return depth;
}

}  // namespace

StateNetwork build_network(const ControlParameter& mu, Precision n,
                           QuantizationMode mode) {
  if (n.bits < mu.exponent()) {
    throw std::domain_error("precision n = " + std::to_string(n.bits) +
                            " is below the mu exponent n_mu = " +
                            std::to_string(mu.exponent()));
  }
  if (n.bits > kMaxNetworkBits) {
    throw std::domain_error("network precision capped at " +
                            std::to_string(kMaxNetworkBits) +
                            " bits (dense successor table)");
  }
  StateNetwork net{mu, n, mode, {}};
  const node_t count = n.node_count();
  net.successor.resize(count);
  for (node_t i = 0; i < count; ++i) {
    net.successor[i] = static_cast<std::uint32_t>(logistic_step(i, mu, n, mode));
  }
  return net;
}

std::vector<std::vector<node_t>> find_cycles(const StateNetwork& net) {
  const std::size_t count = net.successor.size();
  // 0 = unvisited, 1 = on the current walk, 2 = finalized.
  std::vector<std::uint8_t> color(count, 0);
  std::vector<std::uint32_t> path;
  std::vector<std::vector<node_t>> cycles;
  for (std::size_t start = 0; start < count; ++start) {
    if (color[start] != 0) continue;
    path.clear();
    std::uint32_t x = static_cast<std::uint32_t>(start);
    while (color[x] == 0) {
      color[x] = 1;
      path.push_back(x);
      x = net.successor[x];
    }
    if (color[x] == 1) {
      // x is on the current walk: the path suffix from x is a new cycle.
      std::size_t k = path.size();
      while (path[k - 1] != x) --k;
      cycles.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(k - 1),
                          path.end());
    }
    for (std::uint32_t y : path) color[y] = 2;
  }
  for (auto& cycle : cycles) {
    auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return cycles;
}

std::vector<ComponentInfo> weak_components(const StateNetwork& net) {
  const std::size_t count = net.successor.size();
  DisjointSets sets(count);
  for (std::size_t i = 0; i < count; ++i) {
    sets.unite(static_cast<std::uint32_t>(i), net.successor[i]);
  }

  // Component index in order of smallest member (ascending scan).
  std::vector<std::uint32_t> comp_of_root(count, kUnset);
  std::vector<ComponentInfo> comps;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t root = sets.find(static_cast<std::uint32_t>(i));
    std::uint32_t c = comp_of_root[root];
    if (c == kUnset) {
      c = static_cast<std::uint32_t>(comps.size());
      comp_of_root[root] = c;
      comps.push_back(ComponentInfo{});
      comps[c].min_label = i;
    }
    ++comps[c].node_count;
  }

  const auto cycles = find_cycles(net);
  const auto depth = tail_depths(net, cycles);
  for (auto& cycle : cycles) {
    const std::uint32_t c =
        comp_of_root[sets.find(static_cast<std::uint32_t>(cycle.front()))];
    comps[c].cycle = cycle;
    comps[c].cycle_length = cycle.size();
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t c = comp_of_root[sets.find(static_cast<std::uint32_t>(i))];
    comps[c].max_tail_length = std::max<std::uint64_t>(comps[c].max_tail_length, depth[i]);
  }

  std::sort(comps.begin(), comps.end(), [](const ComponentInfo& a, const ComponentInfo& b) {
    if (a.node_count != b.node_count) return a.node_count > b.node_count;
    return a.min_label < b.min_label;
  });
  for (std::size_t c = 0; c < comps.size(); ++c) {
    comps[c].id = static_cast<std::uint32_t>(c);
  }
  return comps;
}

std::vector<std::uint32_t> in_degrees(const StateNetwork& net) {
  std::vector<std::uint32_t> degree(net.successor.size(), 0);
  for (std::uint32_t s : net.successor) ++degree[s];
  return degree;
}

std::uint64_t tail_length(const StateNetwork& net, node_t i) {
  require_valid_node(net, i);
  // Rho walk: the first node seen twice is the entry point of the cycle,
  // and its first-visit index is the tail length.
  std::unordered_map<node_t, std::uint64_t> first_seen;
  node_t x = i;
  std::uint64_t step = 0;
  while (true) {
    auto [it, inserted] = first_seen.emplace(x, step);
    if (!inserted) return it->second;
    x = net.step(x);
    ++step;
  }
}

NetworkSummary summarize(const StateNetwork& net) {
  NetworkSummary summary;
  summary.components = weak_components(net);
  summary.component_count = summary.components.size();

  const std::size_t count = net.successor.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (net.successor[i] == i) summary.self_loop_nodes.push_back(i);
  }

  const auto degree = in_degrees(net);
  std::uint32_t best = 0;
  node_t best_node = 0;
  for (std::size_t v = 0; v < count; ++v) {
    if (degree[v] > best) {
      best = degree[v];
      best_node = v;
    }
  }
  summary.max_in_degree = best;
  summary.max_in_degree_node = best_node;
  return summary;
}

}  // namespace statenet
