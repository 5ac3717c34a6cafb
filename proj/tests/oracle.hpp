// Test-only brute-force oracle, deliberately independent of the library:
// arbitrary-precision rationals via boost::multiprecision instead of 128-bit
// shifts, flood fill instead of union-find, in-degree peeling instead of
// colored walks, reverse BFS instead of memoized tail walks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "statenet/fxp_map.hpp"

namespace oracle {

using bigint = boost::multiprecision::cpp_int;

inline std::uint64_t logistic_step(std::uint64_t i, std::uint64_t mu_num,
                                   unsigned mu_exp, unsigned n,
                                   statenet::QuantizationMode mode) {
  const bigint one{1};
  const bigint num = bigint(mu_num) * i * ((one << n) - i);
  const bigint den = one << (mu_exp + n);
  bigint q;
  switch (mode) {
    case statenet::QuantizationMode::Floor:
      q = num / den;
      break;
    case statenet::QuantizationMode::Ceil:
      q = (num + den - 1) / den;
      break;
    case statenet::QuantizationMode::Round:
      q = (2 * num + den) / (2 * den);
      break;
  }
  return q.convert_to<std::uint64_t>();
}

inline std::vector<std::uint64_t> successors(std::uint64_t mu_num, unsigned mu_exp,
                                             unsigned n,
                                             statenet::QuantizationMode mode) {
  const std::uint64_t count = (std::uint64_t{1} << n) + 1;
  std::vector<std::uint64_t> succ(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    succ[i] = logistic_step(i, mu_num, mu_exp, n, mode);
  }
  return succ;
}

// Weakly connected components by BFS flood fill over the undirected
// adjacency lists; members ascending, components ordered by smallest member.
inline std::vector<std::vector<std::uint64_t>> flood_fill_components(
    const std::vector<std::uint64_t>& succ) {
  const std::size_t count = succ.size();
  std::vector<std::vector<std::uint64_t>> adjacency(count);
  for (std::size_t i = 0; i < count; ++i) {
    adjacency[i].push_back(succ[i]);
    adjacency[succ[i]].push_back(i);
  }
  std::vector<char> seen(count, 0);
  std::vector<std::vector<std::uint64_t>> components;
  for (std::size_t start = 0; start < count; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint64_t> members;
    std::deque<std::uint64_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const std::uint64_t u = queue.front();
      queue.pop_front();
      members.push_back(u);
      for (std::uint64_t v : adjacency[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

inline std::vector<std::uint32_t> in_degrees(const std::vector<std::uint64_t>& succ) {
  std::vector<std::uint32_t> degree(succ.size(), 0);
  for (std::uint64_t s : succ) ++degree[s];
  return degree;
}

// Cycle membership by peeling: repeatedly delete nodes of in-degree zero;
// whatever survives lies on a cycle.
inline std::vector<char> on_cycle(const std::vector<std::uint64_t>& succ) {
  auto degree = in_degrees(succ);
  std::deque<std::uint64_t> queue;
  for (std::size_t v = 0; v < succ.size(); ++v) {
    if (degree[v] == 0) queue.push_back(v);
  }
  std::vector<char> alive(succ.size(), 1);
  while (!queue.empty()) {
    const std::uint64_t u = queue.front();
    queue.pop_front();
    alive[u] = 0;
    if (--degree[succ[u]] == 0) queue.push_back(succ[u]);
  }
  return alive;
}

// All cycles in canonical form: rotated to the smallest node, sorted by it.
inline std::vector<std::vector<std::uint64_t>> cycles(
    const std::vector<std::uint64_t>& succ) {
  const auto alive = on_cycle(succ);
  std::vector<char> taken(succ.size(), 0);
  std::vector<std::vector<std::uint64_t>> result;
  for (std::size_t start = 0; start < succ.size(); ++start) {
    if (!alive[start] || taken[start]) continue;
    std::vector<std::uint64_t> cycle;
    std::uint64_t x = start;
    do {
      cycle.push_back(x);
      taken[x] = 1;
      x = succ[x];
    } while (x != start);
    result.push_back(std::move(cycle));  // starts at its smallest node already
  }
  return result;
}

// Tail lengths by BFS from the cycle nodes over reversed edges.
inline std::vector<std::uint64_t> tail_lengths(const std::vector<std::uint64_t>& succ) {
  const std::size_t count = succ.size();
  std::vector<std::vector<std::uint64_t>> reverse(count);
  for (std::size_t i = 0; i < count; ++i) reverse[succ[i]].push_back(i);
  const auto alive = on_cycle(succ);
  std::vector<std::uint64_t> tail(count, 0);
  std::vector<char> seen(count, 0);
  std::deque<std::uint64_t> queue;
  for (std::size_t v = 0; v < count; ++v) {
    if (alive[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::uint64_t u = queue.front();
    queue.pop_front();
    for (std::uint64_t p : reverse[u]) {
      if (!seen[p]) {
        seen[p] = 1;
        tail[p] = tail[u] + 1;
        queue.push_back(p);
      }
    }
  }
  return tail;
}

}  // namespace oracle
