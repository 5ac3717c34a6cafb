#include "statenet/prop_verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace statenet {

namespace {

PropertyReport new_report(const char* claim_id, const ControlParameter& mu,
                          unsigned n_lo, unsigned n_hi,
                          QuantizationMode mode = QuantizationMode::Round) {
  PropertyReport report{claim_id, mu, n_lo, n_hi, mode, true, 0, {}, {}, {}, {}};
  return report;
}

void finalize(PropertyReport& report) {
  report.holds = report.violations.empty();
}

std::int64_t to_i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// |R(v)| for the signed dyadic v = sign * mag / 2^log2_den under
// round-half-away-from-zero equals half-up rounding of the magnitude.
std::uint64_t abs_round(uint128 mag, unsigned log2_den) {
  return quantize(ExactRatio{mag, log2_den}, QuantizationMode::Round);
}

}  // namespace

bool is_proven_claim(const std::string& claim_id) {
  return claim_id == "P1" || claim_id == "P2" || claim_id == "D2";
}

bool is_assertable_conjecture(const std::string& claim_id) {
  return claim_id == "C1" || claim_id == "C2" || claim_id == "D4" ||
         claim_id == "D5" || claim_id == "D6";
}

PropertyReport check_p1_even(const ControlParameter& mu, Precision n) {
  PropertyReport report = new_report("P1", mu, n.bits, n.bits);
  report.notes =
      "even labels: F_{n+1}(2i) = 2*F_n(i) + delta, delta from the quarter of "
      "frac(f_n(i)*2^n); exhaustive over i in [0, 2^n], round quantization";
  const Precision finer{n.bits + 1};
  for (node_t i = 0; i <= n.max_label(); ++i) {
    const ExactRatio x = exact_value(i, mu, n);
    const unsigned quarter = x.frac_quarter();
    const int delta = quarter == 1 ? 1 : quarter == 2 ? -1 : 0;
    const std::int64_t coarse = to_i64(quantize(x, QuantizationMode::Round));
    const std::int64_t fine =
        to_i64(logistic_step(2 * i, mu, finer, QuantizationMode::Round));
    ++report.checked_count;
    if (fine != 2 * coarse + delta) {
      report.violations.push_back(Witness{
          {{"i", to_i64(i)}, {"n", n.bits}},
          std::to_string(2 * coarse + delta),
          std::to_string(fine)});
    }
  }
  finalize(report);
  return report;
}

PropertyReport check_p2_odd(const ControlParameter& mu, Precision n) {
  PropertyReport report = new_report("P2", mu, n.bits, n.bits);
  report.notes =
      "odd labels: |F_{n+1}(2i+1) - 2*F_n(i)| <= |R(N_mu*(2^{n+1}-4i-1)/"
      "2^{n_mu+n+1})| + (1 if frac in [0.25,0.75) else 2); i in [0, 2^n - 1] "
      "covers every odd label of the (n+1)-bit network";
  const Precision finer{n.bits + 1};
  const unsigned log2_den = mu.exponent() + n.bits + 1;
  for (node_t i = 0; i < n.max_label(); ++i) {
    const std::int64_t lhs =
        std::abs(to_i64(logistic_step(2 * i + 1, mu, finer, QuantizationMode::Round)) -
                 2 * to_i64(logistic_step(i, mu, n, QuantizationMode::Round)));
    const std::int64_t shifted =
        to_i64(node_t{2} << n.bits) - to_i64(4 * i + 1);  // 2^{n+1} - (4i+1)
    const uint128 mag = uint128{mu.numerator()} *
                        static_cast<std::uint64_t>(shifted < 0 ? -shifted : shifted);
    const std::int64_t bound_main = to_i64(abs_round(mag, log2_den));
    const unsigned quarter = exact_value(i, mu, n).frac_quarter();
    const std::int64_t slack = (quarter == 1 || quarter == 2) ? 1 : 2;
    ++report.checked_count;
    if (lhs > bound_main + slack) {
      report.violations.push_back(Witness{
          {{"i", to_i64(i)}, {"n", n.bits}},
          "<= " + std::to_string(bound_main + slack),
          std::to_string(lhs)});
    }
  }
  finalize(report);
  return report;
}

PropertyReport check_p3_indegree_location(const ControlParameter& mu,
                                          std::optional<unsigned> n) {
  const unsigned bits = n.value_or(mu.exponent());
  const Precision prec{bits};
  PropertyReport report = new_report("P3", mu, bits, bits);
  report.notes =
      "descriptive: lists every node of in-degree > 2 with its exact "
      "normalized distance (2^n - v)/2^n; the claim states no threshold, so "
      "nothing is asserted";
  report.data["property_domain"] = bits == mu.exponent() ? "yes" : "no";

  const StateNetwork net = build_network(mu, prec, QuantizationMode::Round);
  const auto degree = in_degrees(net);
  auto& nodes = report.series["node"];
  auto& degs = report.series["in_degree"];
  node_t farthest = 0;  // largest 2^n - v among listed nodes
  for (node_t v = 0; v < net.node_count(); ++v) {
    ++report.checked_count;
    if (degree[v] >= 3) {
      nodes.push_back(to_i64(v));
      degs.push_back(degree[v]);
      farthest = std::max(farthest, net.n.max_label() - v);
    }
  }
  // Peak image R(mu * 2^{n-2}) = R(N_mu * 2^n / 2^{n_mu + 2}): the largest
  // reachable label; anything above it has in-degree 0.
  const std::uint64_t peak =
      quantize(ExactRatio{uint128{mu.numerator()} << bits, mu.exponent() + 2},
               QuantizationMode::Round);
  report.data["peak_image"] = std::to_string(peak);
  report.data["high_in_degree_count"] = std::to_string(nodes.size());
  report.data["max_normalized_distance"] =
      nodes.empty() ? "none" : dyadic_decimal_string(farthest, bits);
  finalize(report);
  return report;
}

PropertyReport check_c1_collision_distance(const ControlParameter& mu, Precision n,
                                           QuantizationMode mode) {
  PropertyReport report = new_report("C1", mu, n.bits, n.bits, mode);
  report.notes =
      "conjecture: colliding pairs with (i1+i2) mod 2^n != 0 satisfy "
      "|i1-i2| < 2^{n-n_mu+1}; all pairs enumerated via successor buckets, "
      "mirror pairs exempt";

  const StateNetwork net = build_network(mu, n, mode);
  const auto degree = in_degrees(net);
  const std::size_t count = net.successor.size();

  // Group preimages by image; each bucket keeps ascending label order.
  std::vector<std::uint64_t> offset(count + 1, 0);
  for (std::size_t v = 0; v < count; ++v) offset[v + 1] = offset[v] + degree[v];
  std::vector<std::uint32_t> grouped(count);
  {
    std::vector<std::uint64_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < count; ++i) {
      grouped[cursor[net.successor[i]]++] = static_cast<std::uint32_t>(i);
    }
  }

  const std::uint64_t bound = std::uint64_t{1} << (n.bits - mu.exponent() + 1);
  const std::uint64_t modulus = n.max_label();
  std::uint64_t total_pairs = 0;
  std::uint64_t exempt_pairs = 0;
  std::uint64_t max_distance = 0;
  for (std::size_t v = 0; v < count; ++v) {
    for (std::uint64_t a = offset[v]; a < offset[v + 1]; ++a) {
      for (std::uint64_t b = a + 1; b < offset[v + 1]; ++b) {
        const std::uint64_t i1 = grouped[a];
        const std::uint64_t i2 = grouped[b];
        ++total_pairs;
        if ((i1 + i2) % modulus == 0) {
          ++exempt_pairs;
          continue;
        }
        ++report.checked_count;
        const std::uint64_t distance = i2 - i1;  // bucket order is ascending
        max_distance = std::max(max_distance, distance);
        if (distance >= bound) {
          report.violations.push_back(Witness{
              {{"i1", to_i64(i1)}, {"i2", to_i64(i2)}, {"image", to_i64(v)}},
              "< " + std::to_string(bound),
              std::to_string(distance)});
        }
      }
    }
  }
  report.data["bound"] = std::to_string(bound);
  report.data["colliding_pairs_total"] = std::to_string(total_pairs);
  report.data["exempt_pairs"] = std::to_string(exempt_pairs);
  report.data["max_distance"] = std::to_string(max_distance);
  finalize(report);
  return report;
}

PropertyReport check_c2_component_count(const ControlParameter& mu, unsigned n_lo,
                                        unsigned n_hi) {
  if (n_lo > n_hi) throw std::invalid_argument("empty precision range");
  PropertyReport report = new_report("C2", mu, n_lo, n_hi);
  report.notes = "conjecture: the number of weakly connected components C <= 6";
  auto& sequence = report.series["component_count"];
  std::uint64_t worst = 0;
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    const StateNetwork net = build_network(mu, Precision{n}, QuantizationMode::Round);
    const std::uint64_t c = weak_components(net).size();
    sequence.push_back(to_i64(c));
    worst = std::max(worst, c);
    ++report.checked_count;
    if (c > 6) {
      report.violations.push_back(
          Witness{{{"n", n}}, "C <= 6", std::to_string(c)});
    }
  }
  report.data["max_component_count"] = std::to_string(worst);
  finalize(report);
  return report;
}

std::vector<node_t> periodic_points(const StateNetwork& net, std::uint64_t m) {
  if (m < 1) {
    throw std::domain_error("iteration order m must be >= 1");
  }
  std::vector<node_t> points;
  for (const auto& cycle : find_cycles(net)) {
    if (m % cycle.size() == 0) {
      points.insert(points.end(), cycle.begin(), cycle.end());
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

std::vector<PropertyReport> check_discussion_claims(const ControlParameter& mu,
                                                    unsigned n_lo, unsigned n_hi,
                                                    unsigned m_max) {
  if (n_lo > n_hi) throw std::invalid_argument("empty precision range");
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");

  auto make = [&](const char* id, const char* notes) {
    PropertyReport r = new_report(id, mu, n_lo, n_hi);
    r.notes = notes;
    return r;
  };
  PropertyReport d1 = make("D1",
      "descriptive: component count per n (the claim says 'small' without a "
      "bound)");
  PropertyReport d2 = make("D2",
      "theorem: every weakly connected component contains exactly one cycle "
      "(self-loops are cycles of length 1)");
  PropertyReport d3 = make("D3",
      "descriptive: component count vs cycle count vs solutions of "
      "F_n^(m)(x) = x for m in [1, m_max]; a length-L cycle contributes L "
      "solutions per multiple of L, so the literal reading over-counts");
  PropertyReport d4 = make("D4",
      "every cycle of length > 2 contains a node of in-degree >= 3 "
      "(threshold: strictly more than the generic mirror collision)");
  PropertyReport d5 = make("D5",
      "max-in-degree node label recurrence: D_{n+1} in {2*D_n, 2*D_n+1, "
      "2*D_n-1}");
  PropertyReport d6 = make("D6",
      "one component dominates (more than half of all nodes) and component "
      "sizes are strictly decreasing");

  std::optional<node_t> previous_peak;
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    const StateNetwork net = build_network(mu, Precision{n}, QuantizationMode::Round);
    const NetworkSummary summary = summarize(net);
    const auto degree = in_degrees(net);
    const auto cycles = find_cycles(net);
    const std::uint64_t node_total = net.node_count();

    // D1: record the sequence.
    d1.series["component_count"].push_back(to_i64(summary.component_count));
    ++d1.checked_count;

    // D2: one cycle per component, successor-closed with distinct nodes,
    // and the global cycle tally matches the component tally.
    for (const ComponentInfo& comp : summary.components) {
      ++d2.checked_count;
      if (comp.cycle.empty()) {
        d2.violations.push_back(Witness{
            {{"n", n}, {"component_min_label", to_i64(comp.min_label)}},
            "exactly one cycle", "no cycle found"});
        continue;
      }
      bool closed = true;
      for (std::size_t k = 0; k < comp.cycle.size(); ++k) {
        if (net.step(comp.cycle[k]) != comp.cycle[(k + 1) % comp.cycle.size()]) {
          closed = false;
        }
      }
      auto sorted = comp.cycle;
      std::sort(sorted.begin(), sorted.end());
      const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      if (!closed || !distinct) {
        d2.violations.push_back(Witness{
            {{"n", n}, {"component_min_label", to_i64(comp.min_label)}},
            "successor-closed cycle of distinct nodes", "malformed cycle"});
      }
    }
    if (cycles.size() != summary.component_count) {
      d2.violations.push_back(Witness{
          {{"n", n}},
          std::to_string(summary.component_count) + " cycles",
          std::to_string(cycles.size())});
    }

    // D3: the three tallies.
    std::uint64_t distinct_points = 0;
    std::uint64_t solution_pairs = 0;
    for (const auto& cycle : cycles) {
      const std::uint64_t len = cycle.size();
      if (len <= m_max) distinct_points += len;
      solution_pairs += len * (m_max / len);  // one contribution per multiple
    }
    d3.series["component_count"].push_back(to_i64(summary.component_count));
    d3.series["cycle_count"].push_back(to_i64(cycles.size()));
    d3.series["eq7_distinct_solutions"].push_back(to_i64(distinct_points));
    d3.series["eq7_solution_pairs"].push_back(to_i64(solution_pairs));
    ++d3.checked_count;

    // D4: long cycles need a high-in-degree node.
    for (const auto& cycle : cycles) {
      if (cycle.size() <= 2) continue;
      ++d4.checked_count;
      std::uint32_t best = 0;
      for (node_t x : cycle) best = std::max(best, degree[x]);
      if (best < 3) {
        d4.violations.push_back(Witness{
            {{"n", n},
             {"cycle_start", to_i64(cycle.front())},
             {"cycle_length", to_i64(cycle.size())}},
            "a node of in-degree >= 3", "max in-degree " + std::to_string(best)});
      }
    }

    // D5: doubling recurrence of the max-in-degree label.
    d5.series["d_n"].push_back(to_i64(summary.max_in_degree_node));
    if (previous_peak) {
      ++d5.checked_count;
      const std::int64_t twice = 2 * to_i64(*previous_peak);
      const std::int64_t now = to_i64(summary.max_in_degree_node);
      if (now != twice && now != twice + 1 && now != twice - 1) {
        d5.violations.push_back(Witness{
            {{"n", n}, {"d_prev", to_i64(*previous_peak)}},
            "{" + std::to_string(twice - 1) + ", " + std::to_string(twice) +
                ", " + std::to_string(twice + 1) + "}",
            std::to_string(now)});
      }
    }
    previous_peak = summary.max_in_degree_node;

    // D6: dominance and strictly decreasing sizes.
    ++d6.checked_count;
    const std::uint64_t largest = summary.components.front().node_count;
    d6.series["largest_component"].push_back(to_i64(largest));
    if (2 * largest <= node_total) {
      d6.violations.push_back(Witness{
          {{"n", n}},
          "largest component > " + std::to_string(node_total) + "/2",
          std::to_string(largest)});
    }
    for (std::size_t k = 0; k + 1 < summary.components.size(); ++k) {
      if (summary.components[k].node_count <= summary.components[k + 1].node_count) {
        d6.violations.push_back(Witness{
            {{"n", n}, {"rank", to_i64(k)}},
            "strictly decreasing component sizes",
            std::to_string(summary.components[k].node_count) + " then " +
                std::to_string(summary.components[k + 1].node_count)});
        break;
      }
    }
  }

  std::vector<PropertyReport> reports;
  for (PropertyReport* r : {&d1, &d2, &d3, &d4, &d5, &d6}) {
    finalize(*r);
    reports.push_back(std::move(*r));
  }
  return reports;
}

}  // namespace statenet
