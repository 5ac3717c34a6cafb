#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "statenet/degree_stats.hpp"
#include "statenet/prop_verify.hpp"
#include "statenet/state_net.hpp"

namespace statenet {

inline constexpr const char* kToolName = "statenet";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

using json = nlohmann::ordered_json;

// Accepted spellings: "121/32", "121/2^5", "484/2^7". The denominator must
// be a power of two and the value must lie in (0, 4).
ControlParameter parse_mu(const std::string& spec);

// DOT: one node per label in ascending order (attribute x carries the exact
// decimal value i/2^n), one edge per node. Graph attributes carry mu
// (as given), n and the quantization mode so a parse restores every field.
std::string dot_string(const StateNetwork& net);
void export_dot(const StateNetwork& net, const std::filesystem::path& path);
StateNetwork parse_dot(const std::string& text);

// GraphML with declared keys (node: label int, value double; graph: mu, n,
// quant), directed edges, stable element order. Loads in standard graph
// tools.
std::string graphml_string(const StateNetwork& net);
void export_graphml(const StateNetwork& net, const std::filesystem::path& path);
StateNetwork parse_graphml(const std::string& text);

// Structural validation of a GraphML document: well-formed XML, required
// GraphML elements and attributes, declared keys, unique node ids, edge
// endpoints that exist. Throws std::runtime_error describing the first
// violation.
void validate_graphml(const std::string& text);

// CSV "degree,count", ascending, only degrees that occur, LF endings.
std::string degree_csv_string(const DegreeDistribution& dist);
void export_degree_csv(const DegreeDistribution& dist,
                       const std::filesystem::path& path);

struct RunConfig {
  std::string mu_spec;
  unsigned n_lo = 0;
  unsigned n_hi = 0;
  QuantizationMode mode = QuantizationMode::Round;
  std::uint64_t k_min = 1;
  unsigned m_max = 16;
  bool assert_conjectures = false;
};

struct ReportOutcome {
  json document;
  bool completed = true;
  // True when an always-asserted check (P1/P2/D2) failed, or a conjecture
  // failed while assert_conjectures was set.
  bool assertion_failed = false;
};

json to_json(const PropertyReport& report);
json to_json(const NetworkSummary& summary);
json to_json(const DegreeDistribution& dist);
json to_json(const PowerLawFit& fit);

// The full experiment battery: per-n summaries, degree statistics and fits,
// plus every property/conjecture/discussion check. Deterministic: the same
// config yields a byte-identical document.
ReportOutcome run_report(const RunConfig& config);

// Serialize with a trailing newline; creates/truncates the file.
void write_json(const json& doc, const std::filesystem::path& path);

}  // namespace statenet
