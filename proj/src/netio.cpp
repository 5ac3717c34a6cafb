#include "statenet/netio.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace statenet {

namespace {

[[noreturn]] void parse_fail(const std::string& spec, const std::string& why) {
  throw std::invalid_argument("cannot parse mu '" + spec + "': " + why);
}

std::uint64_t parse_u64(std::string_view text, bool& ok) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  ok = ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
  return value;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

std::string shortest_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

ControlParameter parse_mu(const std::string& spec) {
  std::string s = spec;
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  if (s.empty()) parse_fail(spec, "empty");

  const auto slash = s.find('/');
  if (slash == std::string::npos) parse_fail(spec, "expected numerator/denominator");
  const std::string num_text = s.substr(0, slash);
  const std::string den_text = s.substr(slash + 1);

  bool ok = false;
  const std::uint64_t numerator = parse_u64(num_text, ok);
  if (!ok) parse_fail(spec, "bad numerator '" + num_text + "'");
  if (numerator == 0) parse_fail(spec, "numerator must be positive");

  unsigned exponent = 0;
  if (den_text.rfind("2^", 0) == 0) {
    const std::uint64_t e = parse_u64(den_text.substr(2), ok);
    if (!ok) parse_fail(spec, "bad exponent '" + den_text + "'");
    if (e > kMaxPrecisionBits) parse_fail(spec, "exponent exceeds the cap of " +
                                                    std::to_string(kMaxPrecisionBits));
    exponent = static_cast<unsigned>(e);
  } else {
    const std::uint64_t den = parse_u64(den_text, ok);
    if (!ok) parse_fail(spec, "bad denominator '" + den_text + "'");
    if (den == 0) parse_fail(spec, "denominator must be positive");
    if (!std::has_single_bit(den)) {
      parse_fail(spec, "denominator " + den_text + " is not a power of two");
    }
    exponent = static_cast<unsigned>(std::countr_zero(den));
    if (exponent > kMaxPrecisionBits) {
      parse_fail(spec, "exponent exceeds the cap of " + std::to_string(kMaxPrecisionBits));
    }
  }

  try {
    return ControlParameter(numerator, exponent);
  } catch (const std::invalid_argument& e) {
    parse_fail(spec, e.what());
  }
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

std::string dot_string(const StateNetwork& net) {
  std::ostringstream out;
  out << "digraph statenet {\n";
  out << "  graph [mu=\"" << net.mu.raw_str() << "\", n=\"" << net.n.bits
      << "\", quant=\"" << to_string(net.mode) << "\"];\n";
  for (node_t i = 0; i < net.node_count(); ++i) {
    out << "  " << i << " [x=\"" << dyadic_decimal_string(i, net.n.bits) << "\"];\n";
  }
  for (node_t i = 0; i < net.node_count(); ++i) {
    out << "  " << i << " -> " << net.successor[i] << ";\n";
  }
  out << "}\n";
  return out.str();
}

void export_dot(const StateNetwork& net, const std::filesystem::path& path) {
  write_text_file(dot_string(net), path);
}

namespace {

[[noreturn]] void dot_fail(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("DOT parse error at line " + std::to_string(line_no) +
                           ": " + why);
}

// Extracts value of `name="value"` from an attribute list.
std::string dot_attr(const std::string& text, const std::string& name,
                     std::size_t line_no) {
  const std::string needle = name + "=\"";
  const auto start = text.find(needle);
  if (start == std::string::npos) dot_fail(line_no, "missing attribute " + name);
  const auto end = text.find('"', start + needle.size());
  if (end == std::string::npos) dot_fail(line_no, "unterminated attribute " + name);
  return text.substr(start + needle.size(), end - start - needle.size());
}

}  // namespace

StateNetwork parse_dot(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      return true;
    }
    return false;
  };

  if (!next_line() || line != "digraph statenet {") {
    dot_fail(line_no, "expected 'digraph statenet {'");
  }
  if (!next_line() || line.rfind("graph [", 0) != 0) {
    dot_fail(line_no, "expected graph attribute line");
  }
  const ControlParameter mu = parse_mu(dot_attr(line, "mu", line_no));
  bool ok = false;
  const std::uint64_t bits = parse_u64(dot_attr(line, "n", line_no), ok);
  if (!ok || bits > kMaxNetworkBits) dot_fail(line_no, "bad n attribute");
  const Precision n{static_cast<unsigned>(bits)};
  const QuantizationMode mode = parse_quantization_mode(dot_attr(line, "quant", line_no));

  const node_t count = n.node_count();
  std::vector<std::uint8_t> node_seen(count, 0);
  std::vector<std::uint8_t> edge_seen(count, 0);
  std::vector<std::uint32_t> successor(count, 0);
  node_t nodes = 0;
  node_t edges = 0;

  while (next_line() && line != "}") {
    if (line.empty() || line.back() != ';') dot_fail(line_no, "expected ';'");
    const auto arrow = line.find(" -> ");
    if (arrow != std::string::npos) {
      bool ok_a = false, ok_b = false;
      const std::uint64_t a = parse_u64(line.substr(0, arrow), ok_a);
      const std::uint64_t b =
          parse_u64(line.substr(arrow + 4, line.size() - arrow - 5), ok_b);
      if (!ok_a || !ok_b || a >= count || b >= count) dot_fail(line_no, "bad edge");
      if (edge_seen[a]) dot_fail(line_no, "duplicate edge source " + std::to_string(a));
      edge_seen[a] = 1;
      successor[a] = static_cast<std::uint32_t>(b);
      ++edges;
    } else {
      const auto space = line.find(' ');
      if (space == std::string::npos) dot_fail(line_no, "unrecognized statement");
      bool ok_id = false;
      const std::uint64_t id = parse_u64(line.substr(0, space), ok_id);
      if (!ok_id || id >= count) dot_fail(line_no, "bad node id");
      if (node_seen[id]) dot_fail(line_no, "duplicate node " + std::to_string(id));
      const std::string x = dot_attr(line, "x", line_no);
      if (x != dyadic_decimal_string(id, n.bits)) {
        dot_fail(line_no, "node " + std::to_string(id) + " has x=\"" + x +
                              "\", expected \"" + dyadic_decimal_string(id, n.bits) + "\"");
      }
      node_seen[id] = 1;
      ++nodes;
    }
  }
  if (line != "}") dot_fail(line_no, "missing closing brace");
  if (nodes != count) {
    throw std::runtime_error("DOT document declares " + std::to_string(nodes) +
                             " nodes, expected " + std::to_string(count));
  }
  if (edges != count) {
    throw std::runtime_error("DOT document declares " + std::to_string(edges) +
                             " edges, expected " + std::to_string(count));
  }
  return StateNetwork{mu, n, mode, std::move(successor)};
}

// ---------------------------------------------------------------------------
// Minimal XML reader (for GraphML round-trips and structural validation)
// ---------------------------------------------------------------------------

namespace xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Element> children;
  std::string text;

  const std::string* attr(const std::string& key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

class Reader {
 public:
  explicit Reader(const std::string& text) : s_(text) {}

  Element parse_document() {
    skip_ws();
    if (peek_starts("<?xml")) skip_until("?>");
    skip_misc();
    Element root = parse_element();
    skip_misc();
    if (pos_ != s_.size()) fail("trailing content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::runtime_error("XML parse error at offset " + std::to_string(pos_) +
                             ": " + why);
  }

  bool peek_starts(std::string_view prefix) const {
    return s_.compare(pos_, prefix.size(), prefix) == 0;
  }

  void skip_until(std::string_view sentinel) {
    const auto at = s_.find(sentinel, pos_);
    if (at == std::string::npos) fail("unterminated construct");
    pos_ = at + sentinel.size();
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void skip_misc() {
    while (true) {
      skip_ws();
      if (peek_starts("<!--")) {
        skip_until("-->");
      } else {
        return;
      }
    }
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
           c == '_' || c == ':';
  }

  std::string parse_name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }

  std::string decode(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      const auto end = raw.find(';', i);
      if (end == std::string_view::npos) fail("unterminated entity");
      const std::string_view entity = raw.substr(i + 1, end - i - 1);
      if (entity == "amp") out += '&';
      else if (entity == "lt") out += '<';
      else if (entity == "gt") out += '>';
      else if (entity == "quot") out += '"';
      else if (entity == "apos") out += '\'';
      else fail("unknown entity &" + std::string(entity) + ";");
      i = end;
    }
    return out;
  }

  Element parse_element() {
    if (pos_ >= s_.size() || s_[pos_] != '<') fail("expected '<'");
    ++pos_;
    Element el;
    el.name = parse_name();
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated start tag");
      if (s_[pos_] == '/') {
        if (!peek_starts("/>")) fail("stray '/'");
        pos_ += 2;
        return el;  // self-closing
      }
      if (s_[pos_] == '>') {
        ++pos_;
        break;
      }
      const std::string key = parse_name();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) {
        fail("expected quoted attribute value");
      }
      const char quote = s_[pos_++];
      const auto end = s_.find(quote, pos_);
      if (end == std::string::npos) fail("unterminated attribute value");
      el.attrs.emplace_back(key, decode(std::string_view(s_).substr(pos_, end - pos_)));
      pos_ = end + 1;
    }
    // Content until the matching end tag.
    while (true) {
      const auto lt = s_.find('<', pos_);
      if (lt == std::string::npos) fail("missing end tag for <" + el.name + ">");
      el.text += decode(std::string_view(s_).substr(pos_, lt - pos_));
      pos_ = lt;
      if (peek_starts("<!--")) {
        skip_until("-->");
        continue;
      }
      if (peek_starts("</")) {
        pos_ += 2;
        const std::string closing = parse_name();
        if (closing != el.name) {
          fail("mismatched end tag </" + closing + "> for <" + el.name + ">");
        }
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '>') fail("malformed end tag");
        ++pos_;
        return el;
      }
      el.children.push_back(parse_element());
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace xml

// ---------------------------------------------------------------------------
// GraphML
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kGraphmlNamespace = "http://graphml.graphdrawing.org/xmlns";

std::string xml_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

[[noreturn]] void graphml_fail(const std::string& why) {
  throw std::runtime_error("invalid GraphML: " + why);
}

struct KeyDecl {
  std::string domain;     // for=
  std::string attr_name;
  std::string attr_type;
};

}  // namespace

std::string graphml_string(const StateNetwork& net) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<graphml xmlns=\"" << kGraphmlNamespace << "\"\n"
      << "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      << "         xsi:schemaLocation=\"" << kGraphmlNamespace << " "
      << kGraphmlNamespace << "/1.0/graphml.xsd\">\n";
  out << "  <key id=\"d0\" for=\"node\" attr.name=\"label\" attr.type=\"int\"/>\n";
  out << "  <key id=\"d1\" for=\"node\" attr.name=\"value\" attr.type=\"double\"/>\n";
  out << "  <key id=\"d2\" for=\"graph\" attr.name=\"mu\" attr.type=\"string\"/>\n";
  out << "  <key id=\"d3\" for=\"graph\" attr.name=\"n\" attr.type=\"int\"/>\n";
  out << "  <key id=\"d4\" for=\"graph\" attr.name=\"quant\" attr.type=\"string\"/>\n";
  out << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  out << "    <data key=\"d2\">" << xml_escape(net.mu.raw_str()) << "</data>\n";
  out << "    <data key=\"d3\">" << net.n.bits << "</data>\n";
  out << "    <data key=\"d4\">" << to_string(net.mode) << "</data>\n";
  const double scale = static_cast<double>(net.n.max_label());
  for (node_t i = 0; i < net.node_count(); ++i) {
    out << "    <node id=\"" << i << "\"><data key=\"d0\">" << i
        << "</data><data key=\"d1\">" << shortest_double(static_cast<double>(i) / scale)
        << "</data></node>\n";
  }
  for (node_t i = 0; i < net.node_count(); ++i) {
    out << "    <edge source=\"" << i << "\" target=\"" << net.successor[i]
        << "\"/>\n";
  }
  out << "  </graph>\n";
  out << "</graphml>\n";
  return out.str();
}

void export_graphml(const StateNetwork& net, const std::filesystem::path& path) {
  write_text_file(graphml_string(net), path);
}

void validate_graphml(const std::string& text) {
  const xml::Element root = xml::Reader(text).parse_document();
  if (root.name != "graphml") graphml_fail("root element is <" + root.name + ">");
  const std::string* ns = root.attr("xmlns");
  if (!ns || *ns != kGraphmlNamespace) graphml_fail("missing or wrong xmlns");

  std::map<std::string, KeyDecl> keys;
  bool saw_graph = false;
  for (const xml::Element& child : root.children) {
    if (child.name == "key") {
      if (saw_graph) graphml_fail("<key> declared after <graph>");
      const std::string* id = child.attr("id");
      const std::string* domain = child.attr("for");
      const std::string* attr_name = child.attr("attr.name");
      const std::string* attr_type = child.attr("attr.type");
      if (!id || id->empty()) graphml_fail("<key> without id");
      if (keys.count(*id)) graphml_fail("duplicate key id '" + *id + "'");
      if (!domain || (*domain != "graph" && *domain != "node" && *domain != "edge" &&
                      *domain != "all")) {
        graphml_fail("key '" + *id + "' has invalid 'for' domain");
      }
      if (!attr_name || attr_name->empty()) graphml_fail("key '" + *id + "' lacks attr.name");
      static const std::set<std::string> kTypes{"boolean", "int",   "long",
                                                "float",   "double", "string"};
      if (!attr_type || !kTypes.count(*attr_type)) {
        graphml_fail("key '" + *id + "' has invalid attr.type");
      }
      keys[*id] = KeyDecl{*domain, *attr_name, *attr_type};
    } else if (child.name == "graph") {
      saw_graph = true;
    } else {
      graphml_fail("unexpected element <" + child.name + "> under <graphml>");
    }
  }
  if (!saw_graph) graphml_fail("no <graph> element");

  auto check_data = [&](const xml::Element& data, const std::string& domain) {
    const std::string* key = data.attr("key");
    if (!key) graphml_fail("<data> without key attribute");
    const auto it = keys.find(*key);
    if (it == keys.end()) graphml_fail("<data> references undeclared key '" + *key + "'");
    if (it->second.domain != "all" && it->second.domain != domain) {
      graphml_fail("key '" + *key + "' (for=" + it->second.domain +
                   ") used on a " + domain);
    }
    if (it->second.attr_type == "int" || it->second.attr_type == "long") {
      bool ok = false;
      parse_u64(data.text, ok);
      if (!ok) graphml_fail("non-integer content for key '" + *key + "'");
    } else if (it->second.attr_type == "double" || it->second.attr_type == "float") {
      try {
        std::size_t used = 0;
        std::stod(data.text, &used);
        if (used != data.text.size()) throw std::invalid_argument("");
      } catch (...) {
        graphml_fail("non-numeric content for key '" + *key + "'");
      }
    }
  };

  for (const xml::Element& child : root.children) {
    if (child.name != "graph") continue;
    const std::string* edgedefault = child.attr("edgedefault");
    if (!edgedefault || (*edgedefault != "directed" && *edgedefault != "undirected")) {
      graphml_fail("<graph> lacks a valid edgedefault");
    }
    std::set<std::string> node_ids;
    for (const xml::Element& item : child.children) {
      if (item.name == "node") {
        const std::string* id = item.attr("id");
        if (!id || id->empty()) graphml_fail("<node> without id");
        if (!node_ids.insert(*id).second) graphml_fail("duplicate node id '" + *id + "'");
      }
    }
    for (const xml::Element& item : child.children) {
      if (item.name == "data") {
        check_data(item, "graph");
      } else if (item.name == "node") {
        for (const xml::Element& data : item.children) {
          if (data.name != "data") graphml_fail("unexpected <" + data.name + "> in <node>");
          check_data(data, "node");
        }
      } else if (item.name == "edge") {
        const std::string* source = item.attr("source");
        const std::string* target = item.attr("target");
        if (!source || !target) graphml_fail("<edge> missing source/target");
        if (!node_ids.count(*source)) graphml_fail("edge source '" + *source + "' undeclared");
        if (!node_ids.count(*target)) graphml_fail("edge target '" + *target + "' undeclared");
        for (const xml::Element& data : item.children) {
          if (data.name != "data") graphml_fail("unexpected <" + data.name + "> in <edge>");
          check_data(data, "edge");
        }
      } else {
        graphml_fail("unexpected element <" + item.name + "> under <graph>");
      }
    }
  }
}

StateNetwork parse_graphml(const std::string& text) {
  validate_graphml(text);
  const xml::Element root = xml::Reader(text).parse_document();

  // attr.name -> key id, per domain.
  std::map<std::string, std::string> graph_keys, node_keys;
  for (const xml::Element& child : root.children) {
    if (child.name != "key") continue;
    const std::string domain = *child.attr("for");
    if (domain == "graph") graph_keys[*child.attr("attr.name")] = *child.attr("id");
    if (domain == "node") node_keys[*child.attr("attr.name")] = *child.attr("id");
  }
  for (const char* required : {"mu", "n", "quant"}) {
    if (!graph_keys.count(required)) {
      graphml_fail(std::string("missing graph key '") + required + "'");
    }
  }

  const xml::Element* graph = nullptr;
  for (const xml::Element& child : root.children) {
    if (child.name == "graph") graph = &child;
  }

  std::string mu_text, n_text, quant_text;
  for (const xml::Element& item : graph->children) {
    if (item.name != "data") continue;
    const std::string& key = *item.attr("key");
    if (key == graph_keys["mu"]) mu_text = item.text;
    if (key == graph_keys["n"]) n_text = item.text;
    if (key == graph_keys["quant"]) quant_text = item.text;
  }
  if (mu_text.empty() || n_text.empty() || quant_text.empty()) {
    graphml_fail("graph data for mu/n/quant missing");
  }

  const ControlParameter mu = parse_mu(mu_text);
  bool ok = false;
  const std::uint64_t bits = parse_u64(n_text, ok);
  if (!ok || bits > kMaxNetworkBits) graphml_fail("bad graph n value");
  const Precision n{static_cast<unsigned>(bits)};
  const QuantizationMode mode = parse_quantization_mode(quant_text);

  const node_t count = n.node_count();
  std::vector<std::uint8_t> edge_seen(count, 0);
  std::vector<std::uint32_t> successor(count, 0);
  node_t nodes = 0;
  node_t edges = 0;
  for (const xml::Element& item : graph->children) {
    if (item.name == "node") {
      const std::uint64_t id = parse_u64(*item.attr("id"), ok);
      if (!ok || id >= count) graphml_fail("node id out of range");
      ++nodes;
    } else if (item.name == "edge") {
      const std::uint64_t source = parse_u64(*item.attr("source"), ok);
      if (!ok || source >= count) graphml_fail("edge source out of range");
      const std::uint64_t target = parse_u64(*item.attr("target"), ok);
      if (!ok || target >= count) graphml_fail("edge target out of range");
      if (edge_seen[source]) graphml_fail("node " + std::to_string(source) +
                                          " has more than one outgoing edge");
      edge_seen[source] = 1;
      successor[source] = static_cast<std::uint32_t>(target);
      ++edges;
    }
  }
  if (nodes != count || edges != count) {
    graphml_fail("expected " + std::to_string(count) + " nodes and edges, found " +
                 std::to_string(nodes) + " nodes / " + std::to_string(edges) + " edges");
  }
  return StateNetwork{mu, n, mode, std::move(successor)};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string degree_csv_string(const DegreeDistribution& dist) {
  std::ostringstream out;
  out << "degree,count\n";
  for (const auto& [k, c] : dist.counts) {
    if (c == 0) continue;
    out << k << ',' << c << '\n';
  }
  return out.str();
}

void export_degree_csv(const DegreeDistribution& dist,
                       const std::filesystem::path& path) {
  write_text_file(degree_csv_string(dist), path);
}

void write_json(const json& doc, const std::filesystem::path& path) {
  write_text_file(doc.dump(2) + "\n", path);
}

}  // namespace statenet
