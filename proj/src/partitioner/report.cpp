#include "edgeprog/partitioner/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace edgeprog::partitioner {

namespace {

using ojson = nlohmann::ordered_json;

const char* unit(Objective m) { return m == Objective::Latency ? "ms" : "mJ"; }

std::string number(Objective m, std::int64_t v) {
  return m == Objective::Latency ? format_ms(Duration{v}) : format_mj(Energy{v});
}

std::string ratio(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n ") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const std::string& alias(const FlowGraph& g, const Assignment& a, int block) {
  return g.devices()[static_cast<std::size_t>(a[static_cast<std::size_t>(block)])].alias;
}

std::string head(const flowgraph::LogicBlock& b) {
  return b.primitive == flowgraph::Primitive::Algo ? b.name : flowgraph::to_string(b.primitive);
}

}  // namespace

const char* to_string(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Csv: return "csv";
    case Format::JsonLike: return "json-like";
  }
  return "?";
}

std::optional<Format> format_from_name(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json-like" || name == "json") return Format::JsonLike;
  return std::nullopt;
}

const char* side_of(const FlowGraph& g, const Assignment& a, int block) {
  return g.devices()[static_cast<std::size_t>(a[static_cast<std::size_t>(block)])].is_edge ? "edge" : "device";
}

std::string format_partition(const FlowGraph& g, const ProfileSet& p, const Partition& part, Format f) {
  const auto& a = part.assignment;
  std::ostringstream os;
  if (f == Format::JsonLike) {
    ojson j;
    j["graph"] = g.name();
    j["profile"] = p.name();
    j["objective"] = to_string(part.mode);
    j["method"] = part.method;
    j["unit"] = unit(part.mode);
    j["value"] = number(part.mode, part.value);
    j["cross_edges"] = part.cross_edges;
    j["nodes"] = part.stats.nodes;
    ojson blocks = ojson::array();
    for (const auto& b : g.blocks()) {
      blocks.push_back({{"id", b.id},
                        {"block", head(b)},
                        {"label", b.label},
                        {"device", alias(g, a, b.id)},
                        {"placement", b.movable() ? "movable" : "pinned"},
                        {"side", side_of(g, a, b.id)}});
    }
    j["assignment"] = blocks;
    ojson terms = ojson::array();
    for (const auto& t : part.breakdown) terms.push_back({{"term", t.what}, {"value", number(part.mode, t.value)}});
    j["breakdown"] = terms;
    return j.dump(2) + "\n";
  }
  if (f == Format::Csv) {
    os << "block,head,label,device,placement,side\n";
    for (const auto& b : g.blocks()) {
      os << b.id << "," << csv_field(head(b)) << "," << csv_field(b.label) << "," << csv_field(alias(g, a, b.id))
         << "," << (b.movable() ? "movable" : "pinned") << "," << side_of(g, a, b.id) << "\n";
    }
    os << "term,value_" << unit(part.mode) << "\n";
    for (const auto& t : part.breakdown) os << csv_field(t.what) << "," << number(part.mode, t.value) << "\n";
    os << "total," << number(part.mode, part.value) << "\n";
    return os.str();
  }
  os << "graph " << g.name() << "\n";
  os << "profile " << p.name() << "\n";
  os << "objective " << to_string(part.mode) << "\n";
  os << "method " << part.method << "\n";
  os << "value " << format_value(part.mode, part.value) << "\n";
  os << "cross_edges " << part.cross_edges << "\n";
  os << "nodes " << part.stats.nodes << "\n";
  os << "\n# id device placement side block label\n";
  for (const auto& b : g.blocks()) {
    os << b.id << " " << alias(g, a, b.id) << " " << (b.movable() ? "movable" : "pinned") << " "
       << side_of(g, a, b.id) << " " << head(b) << " " << b.label << "\n";
  }
  os << "\n# " << unit(part.mode) << " term\n";
  for (const auto& t : part.breakdown) os << number(part.mode, t.value) << " " << t.what << "\n";
  return os.str();
}

std::string format_comparison(const FlowGraph& g, const ComparisonReport& r, Format f, const WishboneSweep* sweep) {
  std::ostringstream os;
  if (f == Format::JsonLike) {
    ojson j;
    j["graph"] = r.graph;
    j["profile"] = r.profile;
    j["objective"] = to_string(r.mode);
    j["unit"] = unit(r.mode);
    ojson rows = ojson::array();
    for (const auto& row : r.rows) {
      ojson cut = ojson::array();
      for (const auto& b : g.blocks()) cut.push_back(alias(g, row.assignment, b.id));
      rows.push_back({{"method", row.method},
                      {"value", number(r.mode, row.value)},
                      {"normalized", ratio(row.normalized)},
                      {"cross_edges", row.cross_edges},
                      {"cut", cut}});
    }
    j["rows"] = rows;
    j["best_weights"] = r.best_weights.label();
    if (sweep) {
      ojson sw = ojson::array();
      for (std::size_t i = 0; i < sweep->weights.size(); ++i) {
        sw.push_back({{"weights", sweep->weights[i].label()},
                      {"value", number(r.mode, sweep->results[i].value)}});
      }
      j["sweep"] = sw;
    }
    return j.dump(2) + "\n";
  }
  if (f == Format::Csv) {
    os << "method,value_" << unit(r.mode) << ",normalized,cross_edges,cut\n";
    for (const auto& row : r.rows) {
      std::string cut;
      for (const auto& b : g.blocks()) cut += (b.id ? ";" : "") + alias(g, row.assignment, b.id);
      os << csv_field(row.method) << "," << number(r.mode, row.value) << "," << ratio(row.normalized) << ","
         << row.cross_edges << "," << csv_field(cut) << "\n";
    }
    if (sweep) {
      os << "weights,value_" << unit(r.mode) << "\n";
      for (std::size_t i = 0; i < sweep->weights.size(); ++i) {
        os << csv_field(sweep->weights[i].label()) << "," << number(r.mode, sweep->results[i].value) << "\n";
      }
    }
    return os.str();
  }
  os << "graph " << r.graph << "\n";
  os << "profile " << r.profile << "\n";
  os << "objective " << to_string(r.mode) << "\n";
  os << "best_weights " << r.best_weights.label() << "\n";
  os << "\n# method value_" << unit(r.mode) << " normalized cross_edges\n";
  for (const auto& row : r.rows) {
    os << row.method << " " << number(r.mode, row.value) << " " << ratio(row.normalized) << " " << row.cross_edges
       << "\n";
  }
  os << "\n# id block";
  for (const auto& row : r.rows) os << " " << row.method;
  os << "\n";
  for (const auto& b : g.blocks()) {
    os << b.id << " " << head(b);
    for (const auto& row : r.rows) os << " " << alias(g, row.assignment, b.id);
    os << "\n";
  }
  if (sweep) {
    os << "\n# weights value_" << unit(r.mode) << "\n";
    for (std::size_t i = 0; i < sweep->weights.size(); ++i) {
      os << sweep->weights[i].label() << " " << number(r.mode, sweep->results[i].value) << "\n";
    }
  }
  return os.str();
}

}  // namespace edgeprog::partitioner
