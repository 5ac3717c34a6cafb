#include <algorithm>
#include <future>
#include <stdexcept>
#include <vector>

#include "statenet/netio.hpp"

namespace statenet {

namespace {

json mu_json(const ControlParameter& mu) {
  json j;
  j["raw"] = {{"numerator", mu.raw_numerator()}, {"exponent", mu.raw_exponent()}};
  j["normalized"] = {{"numerator", mu.numerator()}, {"exponent", mu.exponent()}};
  j["str"] = mu.str();
  return j;
}

}  // namespace

json to_json(const PropertyReport& report) {
  // Serialized witness lists are capped; the in-memory report always holds
  // the full list and violation_count states the true total.
  constexpr std::size_t kMaxSerializedWitnesses = 1000;
  json j;
  j["claim"] = report.claim_id;
  j["mu"] = report.mu.str();
  j["n_lo"] = report.n_lo;
  j["n_hi"] = report.n_hi;
  j["mode"] = to_string(report.mode);
  j["holds"] = report.holds;
  j["checked_count"] = report.checked_count;
  j["violation_count"] = report.violations.size();
  j["violations_truncated"] = report.violations.size() > kMaxSerializedWitnesses;
  json violations = json::array();
  const std::size_t limit = std::min(report.violations.size(), kMaxSerializedWitnesses);
  for (std::size_t k = 0; k < limit; ++k) {
    const Witness& w = report.violations[k];
    json inputs;
    for (const auto& [name, value] : w.inputs) inputs[name] = value;
    violations.push_back(
        {{"inputs", inputs}, {"expected", w.expected}, {"actual", w.actual}});
  }
  j["violations"] = std::move(violations);
  j["notes"] = report.notes;
  if (!report.data.empty()) j["data"] = report.data;
  if (!report.series.empty()) j["series"] = report.series;
  return j;
}

json to_json(const NetworkSummary& summary) {
  json j;
  j["component_count"] = summary.component_count;
  json comps = json::array();
  for (const ComponentInfo& c : summary.components) {
    comps.push_back({{"id", c.id},
                     {"node_count", c.node_count},
                     {"cycle_length", c.cycle_length},
                     {"max_tail_length", c.max_tail_length},
                     {"min_label", c.min_label},
                     {"cycle", c.cycle}});
  }
  j["components"] = std::move(comps);
  j["self_loop_nodes"] = summary.self_loop_nodes;
  j["max_in_degree_node"] = summary.max_in_degree_node;
  j["max_in_degree"] = summary.max_in_degree;
  return j;
}

json to_json(const DegreeDistribution& dist) {
  json counts = json::array();
  for (const auto& [k, c] : dist.counts) counts.push_back({k, c});
  return json{{"n", dist.n}, {"counts", std::move(counts)}};
}

json to_json(const PowerLawFit& fit) {
  return json{{"available", fit.available}, {"slope", fit.slope},
              {"intercept", fit.intercept}, {"r_squared", fit.r_squared},
              {"k_min", fit.k_min},         {"points_used", fit.points_used}};
}

ReportOutcome run_report(const RunConfig& config) {
  const ControlParameter mu = parse_mu(config.mu_spec);
  if (config.n_lo > config.n_hi) {
    throw std::invalid_argument("empty precision range");
  }
  if (config.n_lo < std::max(1u, mu.exponent())) {
    throw std::invalid_argument("n must be at least max(1, n_mu) = " +
                                std::to_string(std::max(1u, mu.exponent())));
  }
  if (config.n_hi > kMaxNetworkBits) {
    throw std::invalid_argument("n capped at " + std::to_string(kMaxNetworkBits));
  }
  if (config.m_max < 1) {
    throw std::invalid_argument("m_max must be >= 1");
  }

  ReportOutcome outcome;
  json& doc = outcome.document;
  doc["tool"] = {{"name", kToolName},
                 {"version", kToolVersion},
                 {"format", kReportFormatVersion}};
  doc["config"] = {{"mu", config.mu_spec},
                   {"mu_parsed", mu_json(mu)},
                   {"n_lo", config.n_lo},
                   {"n_hi", config.n_hi},
                   {"mode", to_string(config.mode)},
                   {"k_min", config.k_min},
                   {"m_max", config.m_max},
                   {"assert_conjectures", config.assert_conjectures}};

  try {
    // Per-n work runs concurrently; results merge in ascending-n order so
    // the document is identical to a serial run.
    std::vector<std::future<json>> per_n_tasks;
    for (unsigned n = config.n_lo; n <= config.n_hi; ++n) {
      per_n_tasks.push_back(std::async(std::launch::async, [&, n]() {
        const StateNetwork net = build_network(mu, Precision{n}, config.mode);
        const NetworkSummary summary = summarize(net);
        const DegreeDistribution hist = degree_histogram(net);

        json entry;
        entry["n"] = n;
        entry["summary"] = to_json(summary);
        entry["degree_histogram"] = to_json(hist);
        entry["fit"] = to_json(loglog_fit(hist, config.k_min));
        json periodic = json::array();
        for (unsigned m = 1; m <= config.m_max; ++m) {
          std::uint64_t solutions = 0;
          for (const ComponentInfo& c : summary.components) {
            if (m % c.cycle_length == 0) solutions += c.cycle_length;
          }
          periodic.push_back({m, solutions});
        }
        entry["periodic_point_counts"] = std::move(periodic);
        return entry;
      }));
    }
    json per_n = json::array();
    for (auto& task : per_n_tasks) per_n.push_back(task.get());

    // The r-squared / slope sequences across n, for the trend claim.
    json trend;
    trend["n"] = json::array();
    trend["slope"] = json::array();
    trend["r_squared"] = json::array();
    for (const json& entry : per_n) {
      if (!entry["fit"]["available"].get<bool>()) continue;
      trend["n"].push_back(entry["n"]);
      trend["slope"].push_back(entry["fit"]["slope"]);
      trend["r_squared"].push_back(entry["fit"]["r_squared"]);
    }
    doc["per_n"] = std::move(per_n);
    doc["fit_trend"] = std::move(trend);

    json checks = json::array();
    auto add_check = [&](const PropertyReport& report) {
      const bool asserted =
          is_proven_claim(report.claim_id) ||
          (config.assert_conjectures && is_assertable_conjecture(report.claim_id));
      json j = to_json(report);
      j["asserted"] = asserted;
      if (asserted && !report.holds) outcome.assertion_failed = true;
      checks.push_back(std::move(j));
    };

    if (config.mode == QuantizationMode::Round) {
      // Independent per-n checks, again concurrent with an ordered merge.
      std::vector<std::future<PropertyReport>> tasks;
      for (unsigned n = config.n_lo; n <= config.n_hi && n < kMaxPrecisionBits; ++n) {
        tasks.push_back(std::async(std::launch::async,
                                   [&, n] { return check_p1_even(mu, Precision{n}); }));
      }
      for (unsigned n = config.n_lo; n <= config.n_hi && n < kMaxPrecisionBits; ++n) {
        tasks.push_back(std::async(std::launch::async,
                                   [&, n] { return check_p2_odd(mu, Precision{n}); }));
      }
      for (unsigned n = config.n_lo; n <= config.n_hi; ++n) {
        tasks.push_back(std::async(std::launch::async, [&, n] {
          return check_p3_indegree_location(mu, n);
        }));
      }
      for (unsigned n = config.n_lo; n <= config.n_hi; ++n) {
        tasks.push_back(std::async(std::launch::async, [&, n] {
          return check_c1_collision_distance(mu, Precision{n});
        }));
      }
      for (auto& task : tasks) add_check(task.get());
      add_check(check_c2_component_count(mu, config.n_lo, config.n_hi));
      for (const PropertyReport& report :
           check_discussion_claims(mu, config.n_lo, config.n_hi, config.m_max)) {
        add_check(report);
      }
    } else {
      doc["checks_note"] =
          "property checks run under round quantization only; rerun with "
          "--quant round for the full battery";
      for (unsigned n = config.n_lo; n <= config.n_hi; ++n) {
        add_check(check_c1_collision_distance(mu, Precision{n}, config.mode));
      }
    }
    doc["checks"] = std::move(checks);
    doc["assertion_failed"] = outcome.assertion_failed;
    doc["completed"] = true;
  } catch (const std::exception& e) {
    doc["error"] = e.what();
    doc["assertion_failed"] = outcome.assertion_failed;
    doc["completed"] = false;
    outcome.completed = false;
  }
  return outcome;
}

}  // namespace statenet
