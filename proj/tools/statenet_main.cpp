// Command-line front end: build/degrees/verify/report subcommands over the
// fixed-point logistic-map state network.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 an asserted
// check failed (proven properties always assert; conjectures only under
// --assert-conjectures).

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "statenet/netio.hpp"

namespace fs = std::filesystem;

namespace {

struct Range {
  unsigned lo = 0;
  unsigned hi = 0;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  auto parse_one = [&](std::string_view part) -> unsigned {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("bad precision '" + std::string(part) +
                                  "' (expected an integer or a..b)");
    }
    return value;
  };
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = parse_one(text);
  } else {
    r.lo = parse_one(std::string_view(text).substr(0, dots));
    r.hi = parse_one(std::string_view(text).substr(dots + 2));
  }
  if (r.lo > r.hi) throw std::invalid_argument("empty precision range " + text);
  return r;
}

// Relative outputs land in $STATENET_OUT_DIR when set.
fs::path resolve_out(const std::string& out) {
  fs::path p(out);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("STATENET_OUT_DIR")) {
    return fs::path(dir) / p;
  }
  return p;
}

// Per-n file name: "net.dot" stays "net.dot" for a single n and becomes
// "net_n12.dot" within a sweep.
fs::path per_n_path(const fs::path& base, unsigned n, bool sweep) {
  if (!sweep) return base;
  fs::path p = base;
  const std::string stem = p.stem().string();
  const std::string ext = p.extension().string();
  p.replace_filename(stem + "_n" + std::to_string(n) + ext);
  return p;
}

std::string fmt_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

int cmd_build(const std::string& mu_spec, const Range& range,
              const std::string& quant, const std::string& format,
              const std::string& out) {
  const statenet::ControlParameter mu = statenet::parse_mu(mu_spec);
  const statenet::QuantizationMode mode = statenet::parse_quantization_mode(quant);
  if (format != "dot" && format != "graphml") {
    throw std::invalid_argument("build emits dot or graphml, not '" + format + "'");
  }
  const bool sweep = range.lo != range.hi;
  for (unsigned n = range.lo; n <= range.hi; ++n) {
    const statenet::StateNetwork net =
        statenet::build_network(mu, statenet::Precision{n}, mode);
    const fs::path path = per_n_path(resolve_out(out), n, sweep);
    if (format == "dot") {
      statenet::export_dot(net, path);
    } else {
      statenet::export_graphml(net, path);
    }
    std::cout << "wrote " << path.string() << " (" << net.node_count()
              << " nodes)\n";
  }
  return 0;
}

int cmd_degrees(const std::string& mu_spec, const Range& range,
                const std::string& quant, std::uint64_t k_min, bool fit,
                const std::string& out) {
  const statenet::ControlParameter mu = statenet::parse_mu(mu_spec);
  const statenet::QuantizationMode mode = statenet::parse_quantization_mode(quant);
  const bool sweep = range.lo != range.hi;
  for (unsigned n = range.lo; n <= range.hi; ++n) {
    const statenet::StateNetwork net =
        statenet::build_network(mu, statenet::Precision{n}, mode);
    const statenet::DegreeDistribution dist = statenet::degree_histogram(net);
    const fs::path path = per_n_path(resolve_out(out), n, sweep);
    statenet::export_degree_csv(dist, path);
    std::cout << "wrote " << path.string() << "\n";
    if (fit) {
      const statenet::PowerLawFit f = statenet::loglog_fit(dist, k_min);
      if (f.available) {
        std::cout << "n=" << n << " slope=" << fmt_double(f.slope)
                  << " intercept=" << fmt_double(f.intercept)
                  << " r2=" << fmt_double(f.r_squared)
                  << " points=" << f.points_used << "\n";
      } else {
        std::cout << "n=" << n << " fit unavailable (points=" << f.points_used
                  << ")\n";
      }
    }
  }
  return 0;
}

int cmd_verify(const std::string& mu_spec, const Range& range,
               const std::string& quant, const std::string& checks,
               unsigned m_max, bool assert_conjectures, const std::string& out) {
  const statenet::ControlParameter mu = statenet::parse_mu(mu_spec);
  const statenet::QuantizationMode mode = statenet::parse_quantization_mode(quant);

  std::vector<std::string> wanted;
  for (std::size_t pos = 0; pos < checks.size();) {
    const auto comma = checks.find(',', pos);
    const auto end = comma == std::string::npos ? checks.size() : comma;
    wanted.push_back(checks.substr(pos, end - pos));
    pos = end + 1;
  }
  auto selected = [&](const std::string& id) {
    for (const std::string& w : wanted) {
      if (w == id) return true;
      if (w == "D" && id.size() == 2 && id[0] == 'D') return true;
    }
    return false;
  };
  for (const std::string& w : wanted) {
    static const std::vector<std::string> known{"P1", "P2", "P3", "C1", "C2", "D",
                                                "D1", "D2", "D3", "D4", "D5", "D6"};
    if (std::find(known.begin(), known.end(), w) == known.end()) {
      throw std::invalid_argument("unknown check '" + w + "'");
    }
  }

  std::vector<statenet::PropertyReport> reports;
  for (unsigned n = range.lo; n <= range.hi; ++n) {
    if (selected("P1")) reports.push_back(statenet::check_p1_even(mu, statenet::Precision{n}));
    if (selected("P2")) reports.push_back(statenet::check_p2_odd(mu, statenet::Precision{n}));
    if (selected("P3")) reports.push_back(statenet::check_p3_indegree_location(mu, n));
    if (selected("C1")) {
      reports.push_back(statenet::check_c1_collision_distance(mu, statenet::Precision{n}, mode));
    }
  }
  if (selected("C2")) {
    reports.push_back(statenet::check_c2_component_count(mu, range.lo, range.hi));
  }
  bool any_d = false;
  for (const char* id : {"D1", "D2", "D3", "D4", "D5", "D6"}) any_d |= selected(id);
  if (any_d) {
    for (statenet::PropertyReport& r :
         statenet::check_discussion_claims(mu, range.lo, range.hi, m_max)) {
      if (selected(r.claim_id)) reports.push_back(std::move(r));
    }
  }

  bool assertion_failed = false;
  statenet::json check_array = statenet::json::array();
  for (const statenet::PropertyReport& r : reports) {
    const bool asserted =
        statenet::is_proven_claim(r.claim_id) ||
        (assert_conjectures && statenet::is_assertable_conjecture(r.claim_id));
    if (asserted && !r.holds) assertion_failed = true;
    std::cout << "[" << r.claim_id << "] mu=" << r.mu.str() << " n=" << r.n_lo;
    if (r.n_hi != r.n_lo) std::cout << ".." << r.n_hi;
    std::cout << " holds=" << (r.holds ? "yes" : "no")
              << " checked=" << r.checked_count
              << " violations=" << r.violations.size()
              << (asserted ? " (asserted)" : "") << "\n";
    statenet::json j = statenet::to_json(r);
    j["asserted"] = asserted;
    check_array.push_back(std::move(j));
  }

  if (!out.empty()) {
    statenet::json doc;
    doc["tool"] = {{"name", statenet::kToolName},
                   {"version", statenet::kToolVersion},
                   {"format", statenet::kReportFormatVersion}};
    doc["config"] = {{"mu", mu_spec},       {"n_lo", range.lo},
                     {"n_hi", range.hi},    {"mode", quant},
                     {"checks", checks},    {"m_max", m_max},
                     {"assert_conjectures", assert_conjectures}};
    doc["checks"] = std::move(check_array);
    doc["assertion_failed"] = assertion_failed;
    doc["completed"] = true;
    const fs::path path = resolve_out(out);
    statenet::write_json(doc, path);
    std::cout << "wrote " << path.string() << "\n";
  }
  return assertion_failed ? 2 : 0;
}

int cmd_report(const std::string& mu_spec, const Range& range,
               const std::string& quant, std::uint64_t k_min, unsigned m_max,
               bool assert_conjectures, const std::string& out) {
  statenet::RunConfig config;
  config.mu_spec = mu_spec;
  config.n_lo = range.lo;
  config.n_hi = range.hi;
  config.mode = statenet::parse_quantization_mode(quant);
  config.k_min = k_min;
  config.m_max = m_max;
  config.assert_conjectures = assert_conjectures;

  const statenet::ReportOutcome outcome = statenet::run_report(config);
  const fs::path path = resolve_out(out);
  statenet::write_json(outcome.document, path);
  std::cout << "wrote " << path.string() << "\n";
  if (!outcome.completed) {
    std::cerr << "error: battery incomplete: "
              << outcome.document.value("error", std::string("unknown")) << "\n";
    return 1;
  }
  std::cout << (outcome.assertion_failed ? "FAIL" : "OK")
            << ": assertion_failed=" << (outcome.assertion_failed ? "true" : "false")
            << "\n";
  return outcome.assertion_failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"state-space network analysis of the logistic map in fixed-point "
               "arithmetic"};
  app.require_subcommand(1);

  std::string mu_spec, n_text, quant = "round", format = "dot", checks = "P1,P2,P3,C1,C2,D";
  std::string out_build = "statenet.dot", out_degrees = "degrees.csv";
  std::string out_verify, out_report = "report.json";
  std::uint64_t k_min = 1;
  unsigned m_max = 16;
  bool assert_conjectures = false;
  bool fit = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--mu", mu_spec, "control parameter, e.g. 121/2^5 or 121/32")
        ->required();
    cmd->add_option("--n", n_text, "precision bits, single value or range a..b")
        ->required();
    cmd->add_option("--quant", quant, "quantization: round|floor|ceil")
        ->capture_default_str();
  };

  CLI::App* build = app.add_subcommand("build", "emit the state network as DOT or GraphML");
  add_common(build);
  build->add_option("--format", format, "dot|graphml")->capture_default_str();
  build->add_option("--out", out_build, "output path")->capture_default_str();

  CLI::App* degrees = app.add_subcommand("degrees", "emit the in-degree histogram as CSV");
  add_common(degrees);
  degrees->add_option("--k-min", k_min, "smallest degree used by --fit")
      ->capture_default_str();
  degrees->add_flag("--fit", fit, "print the log-log fit per n");
  degrees->add_option("--out", out_degrees, "output path")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "run property/conjecture checks");
  add_common(verify);
  verify->add_option("--checks", checks, "comma list from P1,P2,P3,C1,C2,D,D1..D6")
      ->capture_default_str();
  verify->add_option("--m-max", m_max, "largest m for the F^(m)(x)=x tallies")
      ->capture_default_str();
  verify->add_flag("--assert-conjectures", assert_conjectures,
                   "exit 2 when a conjecture fails (proven claims always assert)");
  verify->add_option("--out", out_verify, "also write the reports as JSON");

  CLI::App* report = app.add_subcommand("report", "full battery: summaries, degrees, all checks");
  add_common(report);
  report->add_option("--k-min", k_min, "smallest degree used in fits")
      ->capture_default_str();
  report->add_option("--m-max", m_max, "largest m for the F^(m)(x)=x tallies")
      ->capture_default_str();
  report->add_flag("--assert-conjectures", assert_conjectures,
                   "exit 2 when a conjecture fails (proven claims always assert)");
  report->add_option("--out", out_report, "output JSON path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Range range = parse_range(n_text);
    if (build->parsed()) return cmd_build(mu_spec, range, quant, format, out_build);
    if (degrees->parsed()) {
      return cmd_degrees(mu_spec, range, quant, k_min, fit, out_degrees);
    }
    if (verify->parsed()) {
      return cmd_verify(mu_spec, range, quant, checks, m_max, assert_conjectures,
                        out_verify);
    }
    return cmd_report(mu_spec, range, quant, k_min, m_max, assert_conjectures,
                      out_report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
