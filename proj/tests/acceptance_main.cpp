// Acceptance battery: one line per criterion, nonzero exit on any failure.
// Every tolerance, sweep bound and runtime limit is pinned here.
#include <sys/resource.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "statenet/netio.hpp"

using namespace statenet;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

[[noreturn]] void bail(const std::string& message) {
  throw std::runtime_error(message);
}

void require(bool condition, const std::string& message) {
  if (!condition) bail(message);
}

void criterion(int id, const std::string& name, double time_limit_s,
               const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (error.empty() && time_limit_s > 0 && elapsed >= time_limit_s) {
    error = "runtime " + std::to_string(elapsed) + " s exceeds the " +
            std::to_string(time_limit_s) + " s limit";
  }
  std::ostringstream line;
  line << (error.empty() ? "[PASS] " : "[FAIL] ") << (id < 10 ? "0" : "") << id
       << " " << name << " (" << std::fixed;
  line.precision(2);
  line << elapsed << " s)";
  if (!error.empty()) {
    line << " -- " << error;
    ++g_failures;
  }
  std::cout << line.str() << std::endl;
}

struct MatrixEntry {
  ControlParameter mu;
  unsigned n;
  QuantizationMode mode;
};

std::vector<MatrixEntry> test_matrix(unsigned max_bits) {
  std::vector<MatrixEntry> entries;
  for (const ControlParameter& mu :
       {ControlParameter(121, 5), ControlParameter(3, 2), ControlParameter(7, 3)}) {
    for (unsigned n = std::max(1u, mu.exponent()); n <= max_bits; ++n) {
      for (QuantizationMode mode : {QuantizationMode::Round, QuantizationMode::Floor,
                                    QuantizationMode::Ceil}) {
        entries.push_back({mu, n, mode});
      }
    }
  }
  return entries;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --- criteria ---------------------------------------------------------------

void exactness_oracle() {
  std::uint64_t checked = 0;
  for (const MatrixEntry& e : test_matrix(10)) {
    const node_t top = node_t{1} << e.n;
    for (node_t i = 0; i <= top; ++i) {
      const node_t got = logistic_step(i, e.mu, Precision{e.n}, e.mode);
      const node_t want =
          oracle::logistic_step(i, e.mu.numerator(), e.mu.exponent(), e.n, e.mode);
      if (got != want) {
        bail("mismatch at mu=" + e.mu.str() + " n=" + std::to_string(e.n) +
             " i=" + std::to_string(i));
      }
      ++checked;
    }
  }
  require(checked > 0, "empty matrix");
}

void property_sweep(const std::function<PropertyReport(Precision)>& check,
                    const char* label) {
  for (unsigned n = 5; n <= 16; ++n) {
    const PropertyReport report = check(Precision{n});
    if (!report.holds) {
      bail(std::string(label) + " violated at n=" + std::to_string(n) + " (" +
           std::to_string(report.violations.size()) + " witnesses)");
    }
    const std::uint64_t domain =
        report.claim_id == "P1" ? (std::uint64_t{1} << n) + 1 : std::uint64_t{1} << n;
    require(report.checked_count == domain, "incomplete enumeration");
  }
}

void structural_theorem() {
  for (const MatrixEntry& e : test_matrix(16)) {
    const StateNetwork net = build_network(e.mu, Precision{e.n}, e.mode);
    const auto comps = weak_components(net);
    const auto cycles = find_cycles(net);
    const auto degree = in_degrees(net);
    const std::uint64_t expected = (std::uint64_t{1} << e.n) + 1;

    require(comps.size() == cycles.size(), "cycle count != component count");
    std::uint64_t nodes = 0;
    for (const ComponentInfo& c : comps) nodes += c.node_count;
    require(nodes == expected, "component sizes do not sum to 2^n + 1");
    std::uint64_t edges = 0;
    for (std::uint32_t d : degree) edges += d;
    require(edges == expected, "in-degrees do not sum to 2^n + 1");
  }
}

void symmetry() {
  for (const MatrixEntry& e : test_matrix(16)) {
    const StateNetwork net = build_network(e.mu, Precision{e.n}, e.mode);
    const node_t top = net.n.max_label();
    for (node_t i = 0; i <= top; ++i) {
      if (net.successor[i] != net.successor[top - i]) {
        bail("symmetry broken at mu=" + e.mu.str() + " n=" + std::to_string(e.n) +
             " i=" + std::to_string(i));
      }
    }
  }
}

void oracle_graph_equivalence() {
  for (const MatrixEntry& e : test_matrix(10)) {
    const StateNetwork net = build_network(e.mu, Precision{e.n}, e.mode);
    const std::vector<std::uint64_t> succ(net.successor.begin(), net.successor.end());

    const auto comps = weak_components(net);
    const auto oracle_comps = oracle::flood_fill_components(succ);
    require(comps.size() == oracle_comps.size(), "component count mismatch");
    for (const auto& members : oracle_comps) {
      const auto match = std::find_if(
          comps.begin(), comps.end(),
          [&](const ComponentInfo& c) { return c.min_label == members.front(); });
      require(match != comps.end(), "component missing");
      require(match->node_count == members.size(), "component size mismatch");
    }

    require(find_cycles(net) == oracle::cycles(succ), "cycle mismatch");

    const auto degree = in_degrees(net);
    const auto oracle_degree = oracle::in_degrees(succ);
    require(std::equal(degree.begin(), degree.end(), oracle_degree.begin(),
                       oracle_degree.end()),
            "in-degree mismatch");

    const auto oracle_tails = oracle::tail_lengths(succ);
    for (node_t i = 0; i < net.node_count(); ++i) {
      require(tail_length(net, i) == oracle_tails[i], "tail length mismatch");
    }
  }
}

void conjecture_evidence() {
  const ControlParameter mu{121, 5};
  // C1 per n: completion and exact bookkeeping; the verdict itself is
  // recorded, not asserted (it is in fact false at this mu).
  for (unsigned n = 5; n <= 18; ++n) {
    const PropertyReport c1 = check_c1_collision_distance(mu, Precision{n});
    const std::uint64_t total = std::stoull(c1.data.at("colliding_pairs_total"));
    const std::uint64_t exempt = std::stoull(c1.data.at("exempt_pairs"));
    require(c1.checked_count == total - exempt, "C1 checked_count inconsistent");
    require(c1.holds == c1.violations.empty(), "C1 holds flag inconsistent");
  }
  const PropertyReport c2 = check_c2_component_count(mu, 5, 18);
  require(c2.checked_count == 14, "C2 sweep incomplete");
  require(c2.series.at("component_count").size() == 14, "C2 sequence incomplete");
  require(c2.holds == c2.violations.empty(), "C2 holds flag inconsistent");
}

void discussion_battery() {
  const ControlParameter mu{121, 5};
  const auto reports = check_discussion_claims(mu, 5, 18, 16);
  require(reports.size() == 6, "expected six discussion reports");
  for (std::size_t k = 0; k < 6; ++k) {
    require(reports[k].claim_id == "D" + std::to_string(k + 1), "report order");
  }

  const PropertyReport& d2 = reports[1];
  require(d2.holds && d2.violations.empty(), "D2 (theorem) must hold");

  const PropertyReport& d5 = reports[4];
  const std::vector<std::int64_t> expected{30,    60,    121,   242,  484,
                                           968,   1936,  3872,  7744, 15488,
                                           30976, 61952, 123904, 247808};
  require(d5.series.at("d_n") == expected, "D5 sequence differs from the oracle");
  require(d5.checked_count == 13, "D5 must check all consecutive pairs");
  require(d5.holds == d5.violations.empty(), "D5 holds flag inconsistent");

  // Dominance holds for every n in [5, 18]: any D6 violation must be a
  // strict-ordering one, never a dominance one.
  const PropertyReport& d6 = reports[5];
  for (const Witness& w : d6.violations) {
    require(w.expected == "strictly decreasing component sizes",
            "dominance violated at n=" + std::to_string(w.inputs[0].second));
  }
}

void scale_free() {
  const ControlParameter mu{121, 5};
  const StateNetwork net = build_network(mu, Precision{18}, QuantizationMode::Round);
  const DegreeDistribution dist = degree_histogram(net);
  const std::uint64_t expected = (std::uint64_t{1} << 18) + 1;
  require(dist.node_total() == expected, "histogram node conservation");
  require(dist.edge_total() == expected, "histogram edge conservation");

  const PowerLawFit fit = loglog_fit(dist, 1);
  require(fit.available, "fit unavailable at n=18");
  require(fit.slope < 0.0, "slope must be strictly negative");

  for (double gamma : {1.5, 2.0, 3.0}) {
    DegreeDistribution synthetic;
    for (std::uint64_t k = 1; k <= 64; ++k) {
      const auto c = static_cast<std::uint64_t>(
          std::llround(1e6 * std::pow(static_cast<double>(k), -gamma)));
      if (c > 0) synthetic.counts[k] = c;
    }
    const PowerLawFit f = loglog_fit(synthetic, 1);
    require(f.available, "synthetic fit unavailable");
    require(std::abs(f.slope + gamma) < 0.05,
            "gamma " + std::to_string(gamma) + " recovered as " +
                std::to_string(-f.slope));
  }
}

void export_round_trips() {
  const ControlParameter mu{121, 5};
  for (unsigned n : {5u, 6u, 12u}) {
    const StateNetwork net = build_network(mu, Precision{n}, QuantizationMode::Round);

    const StateNetwork from_dot = parse_dot(dot_string(net));
    require(from_dot == net, "DOT round-trip failed at n=" + std::to_string(n));

    const std::string gml = graphml_string(net);
    validate_graphml(gml);
    const StateNetwork from_gml = parse_graphml(gml);
    require(from_gml == net, "GraphML round-trip failed at n=" + std::to_string(n));

    const DegreeDistribution dist = degree_histogram(net);
    const std::string csv = degree_csv_string(dist);
    std::uint64_t nodes = 0, edges = 0;
    std::istringstream rows(csv);
    std::string row;
    std::getline(rows, row);
    require(row == "degree,count", "CSV header");
    while (std::getline(rows, row)) {
      const auto comma = row.find(',');
      const std::uint64_t k = std::stoull(row.substr(0, comma));
      const std::uint64_t c = std::stoull(row.substr(comma + 1));
      nodes += c;
      edges += k * c;
    }
    const std::uint64_t expected = (std::uint64_t{1} << n) + 1;
    require(nodes == expected && edges == expected, "CSV conservation identities");
  }
}

void determinism() {
  RunConfig config;
  config.mu_spec = "121/2^5";
  config.n_lo = 5;
  config.n_hi = 8;
  const ReportOutcome a = run_report(config);
  const ReportOutcome b = run_report(config);
  require(a.completed && b.completed, "battery incomplete");
  require(a.document.dump(2) == b.document.dump(2), "library reports differ");

  // Same contract through the CLI, bytes on disk.
  const fs::path dir = fs::current_path() / "acceptance_scratch";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = STATENET_CLI_PATH;
  for (const char* name : {"r1.json", "r2.json"}) {
    const std::string command = cli + " report --mu 121/2^5 --n 5..8 --out " +
                                (dir / name).string() + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI report failed");
  }
  require(slurp(dir / "r1.json") == slurp(dir / "r2.json"), "CLI reports differ");
}

void performance_envelope() {
  RunConfig config;
  config.mu_spec = "121/2^5";
  config.n_lo = 5;
  config.n_hi = 20;
  const ReportOutcome outcome = run_report(config);
  require(outcome.completed, "battery incomplete");
  require(outcome.document["per_n"].size() == 16, "missing per-n entries");

  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gb = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
  require(peak_gb < 1.0,
          "peak memory " + std::to_string(peak_gb) + " GB exceeds 1 GB");
}

}  // namespace

int main() {
  criterion(1, "exactness-oracle", 1.0, exactness_oracle);
  criterion(2, "property-1-even-labels", 5.0, [] {
    property_sweep([](Precision n) { return check_p1_even(ControlParameter{121, 5}, n); },
                   "P1");
  });
  criterion(3, "property-2-odd-labels", 5.0, [] {
    property_sweep([](Precision n) { return check_p2_odd(ControlParameter{121, 5}, n); },
                   "P2");
  });
  criterion(4, "structural-theorem", 0.0, structural_theorem);
  criterion(5, "symmetry", 0.0, symmetry);
  criterion(6, "oracle-graph-equivalence", 0.0, oracle_graph_equivalence);
  criterion(7, "conjecture-evidence-c1-c2", 60.0, conjecture_evidence);
  criterion(8, "discussion-claims-d1-d6", 0.0, discussion_battery);
  criterion(9, "scale-free-reproduction", 10.0, scale_free);
  criterion(10, "export-round-trips", 0.0, export_round_trips);
  criterion(11, "report-determinism", 0.0, determinism);
  criterion(12, "performance-envelope-n20", 60.0, performance_envelope);

  if (g_failures != 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
