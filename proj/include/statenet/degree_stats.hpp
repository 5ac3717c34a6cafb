#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "statenet/state_net.hpp"

namespace statenet {

// In-degree histogram: counts[k] = number of nodes with in-degree k.
// Both conservation identities hold: sum of counts and sum of k*counts
// equal 2^n + 1.
struct DegreeDistribution {
  unsigned n = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  std::uint64_t node_total() const;
  std::uint64_t edge_total() const;
};

// Ordinary least squares through (log k, log counts[k]). Natural log; the
// slope is base-invariant.
struct PowerLawFit {
  bool available = false;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::uint64_t k_min = 1;
  std::size_t points_used = 0;
};

DegreeDistribution degree_histogram(const StateNetwork& net);

// Fits degrees k >= k_min with counts[k] > 0. Fewer than 3 usable points
// leaves the fit unavailable rather than throwing.
PowerLawFit loglog_fit(const DegreeDistribution& dist, std::uint64_t k_min);

// One fit per n in [n_lo, n_hi]; index 0 corresponds to n_lo.
std::vector<PowerLawFit> fit_trend(const ControlParameter& mu, unsigned n_lo,
                                   unsigned n_hi, std::uint64_t k_min,
                                   QuantizationMode mode = QuantizationMode::Round);

}  // namespace statenet
