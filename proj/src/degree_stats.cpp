#include "statenet/degree_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace statenet {

std::uint64_t DegreeDistribution::node_total() const {
  std::uint64_t total = 0;
  for (const auto& [k, c] : counts) total += c;
  return total;
}

std::uint64_t DegreeDistribution::edge_total() const {
  std::uint64_t total = 0;
  for (const auto& [k, c] : counts) total += k * c;
  return total;
}

DegreeDistribution degree_histogram(const StateNetwork& net) {
  DegreeDistribution dist;
  dist.n = net.n.bits;
  for (std::uint32_t d : in_degrees(net)) ++dist.counts[d];
  return dist;
}

PowerLawFit loglog_fit(const DegreeDistribution& dist, std::uint64_t k_min) {
  if (k_min < 1) {
    throw std::invalid_argument("k_min must be at least 1");
  }
  PowerLawFit fit;
  fit.k_min = k_min;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t m = 0;
  for (const auto& [k, c] : dist.counts) {
    if (k < k_min || c == 0) continue;
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(static_cast<double>(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++m;
  }
  fit.points_used = m;
  if (m < 3) return fit;  // unavailable

  const double dm = static_cast<double>(m);
  const double var_x = dm * sxx - sx * sx;
  const double var_y = dm * syy - sy * sy;
  if (var_x <= 0.0) return fit;  // all points at one abscissa
  const double cov = dm * sxy - sx * sy;

  fit.slope = cov / var_x;
  fit.intercept = (sy - fit.slope * sx) / dm;
  fit.r_squared = var_y <= 0.0 ? 1.0 : (cov * cov) / (var_x * var_y);
  fit.available = true;
  return fit;
}

std::vector<PowerLawFit> fit_trend(const ControlParameter& mu, unsigned n_lo,
                                   unsigned n_hi, std::uint64_t k_min,
                                   QuantizationMode mode) {
  if (n_lo > n_hi) {
    throw std::invalid_argument("empty precision range");
  }
  std::vector<PowerLawFit> fits;
  fits.reserve(n_hi - n_lo + 1);
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    const StateNetwork net = build_network(mu, Precision{n}, mode);
    fits.push_back(loglog_fit(degree_histogram(net), k_min));
  }
  return fits;
}

}  // namespace statenet
