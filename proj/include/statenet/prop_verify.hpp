#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statenet/state_net.hpp"

namespace statenet {

// One counterexample: the named inputs plus what was expected and what the
// network actually produced.
struct Witness {
  std::vector<std::pair<std::string, std::int64_t>> inputs;
  std::string expected;
  std::string actual;

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Exhaustive verdict for one claim. holds is true exactly when the
// violation list is empty; checked_count is the full enumeration size of
// the claim's domain (never sampled). `series` carries aligned numeric
// sequences (one entry per n in [n_lo, n_hi] unless noted), `data` scalar
// extras; both feed the JSON reports.
struct PropertyReport {
  std::string claim_id;
  ControlParameter mu;
  unsigned n_lo = 0;
  unsigned n_hi = 0;
  QuantizationMode mode = QuantizationMode::Round;
  bool holds = true;
  std::uint64_t checked_count = 0;
  std::vector<Witness> violations;
  std::string notes;
  std::map<std::string, std::string> data;
  std::map<std::string, std::vector<std::int64_t>> series;
};

// Property 1 (proven): F_{n+1}(2i) = 2 F_n(i) + {+1, -1, 0} depending on
// which quarter frac(f_n(i) * 2^n) falls in. Round mode; any violation
// means the quantizer tie-break is wrong.
PropertyReport check_p1_even(const ControlParameter& mu, Precision n);

// Property 2 (proven): |F_{n+1}(2i+1) - 2 F_n(i)| is bounded by the
// quantized derivative term plus 1 or 2. Checked for i in [0, 2^n - 1],
// the full odd-label set of F_{n+1}.
PropertyReport check_p2_odd(const ControlParameter& mu, Precision n);

// Property 3 (descriptive): nodes of in-degree > 2 sit close to 2^n.
// Lists every such node with its exact normalized distance; the claim
// carries no threshold, so nothing is asserted. Defaults to the property's
// stated network F_{n_mu}.
PropertyReport check_p3_indegree_location(const ControlParameter& mu,
                                          std::optional<unsigned> n = std::nullopt);

// Conjecture 1: colliding pairs that are not mirror images satisfy
// |i1 - i2| < 2^(n - n_mu + 1). Enumerated via successor buckets; every
// counterexample is recorded.
PropertyReport check_c1_collision_distance(const ControlParameter& mu, Precision n,
                                           QuantizationMode mode = QuantizationMode::Round);

// Conjecture 2: the component count C stays <= 6 across the range.
PropertyReport check_c2_component_count(const ControlParameter& mu, unsigned n_lo,
                                        unsigned n_hi);

// Solutions of F_n^(m)(x) = x: exactly the nodes on cycles whose length
// divides m. Sorted ascending. m must be >= 1.
std::vector<node_t> periodic_points(const StateNetwork& net, std::uint64_t m);

// The six discussion claims, one report each (D1..D6):
//   D1 component-count sequence (descriptive),
//   D2 exactly one cycle per component (theorem, asserted),
//   D3 component count vs cycle count vs Eq.-(7) solution tallies over
//      m in [1, m_max] (descriptive; the claim's literal reading over-counts),
//   D4 every cycle longer than 2 holds a node of in-degree >= 3,
//   D5 D_{n+1} in {2 D_n, 2 D_n +/- 1} for the max-in-degree node,
//   D6 the largest component covers more than half the nodes and component
//      sizes are strictly decreasing.
std::vector<PropertyReport> check_discussion_claims(const ControlParameter& mu,
                                                    unsigned n_lo, unsigned n_hi,
                                                    unsigned m_max = 16);

// Claims whose failure indicates an implementation bug (proven properties
// and the functional-graph theorem) as opposed to open conjectures.
bool is_proven_claim(const std::string& claim_id);

// Conjectures and guesses with a crisp predicate: asserted only on request.
// The remaining claims (P3, D1, D3) are descriptive and never assert.
bool is_assertable_conjecture(const std::string& claim_id);

}  // namespace statenet
