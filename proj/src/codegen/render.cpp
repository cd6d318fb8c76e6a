#include "edgeprog/codegen/render.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgeprog/error.hpp"

namespace edgeprog::codegen {

using flowgraph::LogicBlock;
using flowgraph::Primitive;

namespace {

std::string c_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string proc(int frag) { return "frag" + std::to_string(frag) + "_process"; }

// The expression feeding `from` into a block on `device`.
std::string input_of(const Schedule& s, const FlowGraph& g, int from, int device) {
  (void)g;
  for (const auto& f : s.fragments) {
    for (int b : f.blocks) {
      if (b == from) return f.device == device ? "v" + std::to_string(from) : "ep_input(" + std::to_string(from) + ")";
    }
  }
  return "ep_input(" + std::to_string(from) + ")";
}

std::string call(const Schedule& s, const FlowGraph& g, const LogicBlock& b, int device) {
  std::vector<std::string> args;
  for (int ei : g.in_edges(b.id)) args.push_back(input_of(s, g, g.edges()[static_cast<std::size_t>(ei)].from, device));
  std::string fn;
  switch (b.primitive) {
    case Primitive::Sample:
    case Primitive::Actuate:
      fn = flowgraph::to_string(b.primitive);
      args.insert(args.begin(), c_string(b.source_args.empty() ? b.label : b.source_args.front()));
      for (std::size_t i = 1; i < b.source_args.size(); ++i) args.push_back(c_string(b.source_args[i]));
      break;
    case Primitive::Cmp:
      fn = "CMP";
      if (b.source_args.size() == 3) {
        args.push_back(c_string(b.source_args[1]));
        args.push_back(b.source_args[2]);
      }
      break;
    case Primitive::Algo:
      fn = b.name.rfind("AUTO(", 0) == 0 ? "AUTO" : b.name;
      if (fn == "AUTO") args.push_back(c_string(b.name.substr(5, b.name.size() - 6)));
      for (const auto& a : b.source_args) args.push_back(c_string(a));
      break;
    default:
      fn = flowgraph::to_string(b.primitive);
  }
  std::string text = fn + "(";
  for (std::size_t i = 0; i < args.size(); ++i) text += (i ? ", " : "") + args[i];
  text += ")";
  if (b.primitive == Primitive::Actuate) return text + ";";
  return "v" + std::to_string(b.id) + " = " + text + ";";
}

void body(std::ostringstream& os, const Schedule& s, const FlowGraph& g, const Fragment& f, const std::string& ind) {
  for (int b : f.blocks) os << ind << call(s, g, g.block(b), f.device) << "  /* " << g.block(b).label << " */\n";
  bool sends = false;
  for (const auto& w : f.outgoing) {
    if (w.kind == WireKind::Send) {
      os << ind << "ep_pack(&to_send" << f.id << ", " << w.from_block << ", " << w.to_block << ", "
         << c_string(s.devices[static_cast<std::size_t>(w.to_device)].alias) << ", &v" << w.from_block << ", "
         << w.payload_bytes << ");\n";
      sends = true;
    }
  }
  std::vector<int> hops;
  for (const auto& w : f.outgoing) {
    if (w.kind == WireKind::LocalHop && std::find(hops.begin(), hops.end(), w.to_fragment) == hops.end()) {
      hops.push_back(w.to_fragment);
    }
  }
  for (int h : hops) os << ind << "process_post(&" << proc(h) << ", frag_evt, NULL);\n";
  if (sends) os << ind << "process_post(&send_process, send_evt, &to_send" << f.id << ");\n";
}

std::string device_file(const Schedule& s, const FlowGraph& g, int device) {
  const auto& d = s.devices[static_cast<std::size_t>(device)];
  const auto& frags = s.per_device[static_cast<std::size_t>(device)];
  std::ostringstream os;
  os << "/* " << s.app << " on " << d.alias << " (" << d.platform << "): " << frags.size() << " fragment"
     << (frags.size() == 1 ? "" : "s") << ". Generated skeleton. */\n";
  os << "#include \"contiki.h\"\n#include \"edgeprog_blocks.h\"\n\n";
  for (int f : frags) os << "PROCESS(" << proc(f) << ", \"frag" << f << "\");\n";
  os << "PROCESS(send_process, \"send\");\nAUTOSTART_PROCESSES(";
  for (int f : frags) os << "&" << proc(f) << ", ";
  os << "&send_process);\n\n";
  os << "static process_event_t send_evt;\nstatic process_event_t frag_evt;\n";

  for (int f : frags) {
    for (int b : s.fragments[static_cast<std::size_t>(f)].blocks) {
      if (g.block(b).primitive != Primitive::Actuate) os << "static ep_value_t v" << b << ";\n";
    }
  }
  for (int f : frags) {
    const auto& fr = s.fragments[static_cast<std::size_t>(f)];
    bool sends = std::any_of(fr.outgoing.begin(), fr.outgoing.end(),
                             [](const Wire& w) { return w.kind == WireKind::Send; });
    if (sends) os << "static struct ep_msg to_send" << f << ";\n";
  }
  for (int f : frags) {
    const auto& fr = s.fragments[static_cast<std::size_t>(f)];
    if (fr.timer_polled) {
      os << "#define FRAG" << f << "_INTERVAL (CLOCK_SECOND * " << fr.interval_ms << " / 1000)\n";
    }
  }
  os << "\n";

  for (int f : frags) {
    const auto& fr = s.fragments[static_cast<std::size_t>(f)];
    const std::string et = "et_frag" + std::to_string(f);
    os << "PROCESS_THREAD(" << proc(f) << ", ev, data){\n";
    if (fr.timer_polled) {
      os << "\tstatic struct etimer " << et << ";\n";
      os << "\tPROCESS_BEGIN();\n";
      os << "\tetimer_set(&" << et << ", FRAG" << f << "_INTERVAL);\n";
      os << "\twhile(1){\n\t\tPROCESS_YIELD();\n";
      os << "\t\tif (etimer_expired(&" << et << ")){\n";
      body(os, s, g, fr, "\t\t\t");
      os << "\t\t\tetimer_reset(&" << et << ");\n\t\t}\n\t}\n";
    } else {
      os << "\tPROCESS_BEGIN();\n";
      os << "\twhile(1){\n\t\tPROCESS_WAIT_EVENT_UNTIL(ev == frag_evt);\n";
      body(os, s, g, fr, "\t\t");
      os << "\t}\n";
    }
    os << "\tPROCESS_END();\n}\n\n";
  }

  // Incoming network data wakes the fragment that consumes it.
  os << "static void recv_callback(const struct ep_msg *m){\n\tep_store(m);\n\tswitch(m->to_block){\n";
  std::vector<std::pair<int, int>> cases;  // (to_block, to_fragment)
  for (const auto& fr : s.fragments) {
    for (const auto& w : fr.outgoing) {
      if (w.kind == WireKind::Send && w.to_device == device) cases.push_back({w.to_block, w.to_fragment});
    }
  }
  std::sort(cases.begin(), cases.end());
  cases.erase(std::unique(cases.begin(), cases.end()), cases.end());
  for (const auto& [block, frag] : cases) {
    os << "\tcase " << block << ": process_post(&" << proc(frag) << ", frag_evt, NULL); break;\n";
  }
  os << "\tdefault: break;\n\t}\n}\n\n";
  os << "PROCESS_THREAD(send_process, ev, data){\n\tPROCESS_BEGIN();\n";
  os << "\tsend_evt = process_alloc_event();\n\tfrag_evt = process_alloc_event();\n";
  os << "\tep_net_open(recv_callback);\n";
  os << "\twhile(1){\n\t\tPROCESS_WAIT_EVENT_UNTIL(ev == send_evt);\n";
  os << "\t\tep_send((struct ep_msg *)data);\n\t}\n\tPROCESS_END();\n}\n";
  return os.str();
}

std::string manifest(const Schedule& s, const FlowGraph& g) {
  std::ostringstream os;
  os << "app " << s.app << "\n";
  os << "devices " << s.devices.size() << "\n";
  os << "fragments " << s.fragments.size() << "\n";
  os << "sends " << s.send_count() << "\n";
  for (std::size_t d = 0; d < s.devices.size(); ++d) {
    const auto& dev = s.devices[d];
    os << "\n[device " << dev.alias << "]\n";
    os << "platform " << dev.platform << "\n";
    os << "role " << (dev.is_edge ? "edge" : "device") << "\n";
    for (int fi : s.per_device[d]) {
      const auto& f = s.fragments[static_cast<std::size_t>(fi)];
      os << "fragment " << f.id << " trigger=" << (f.timer_polled ? "timer" : "event");
      if (f.timer_polled) os << " interval_ms=" << f.interval_ms;
      os << " compute_ms=" << format_ms(f.compute);
      if (!f.incoming.empty()) {
        os << " after=";
        for (std::size_t i = 0; i < f.incoming.size(); ++i) os << (i ? "," : "") << f.incoming[i];
      }
      os << "\n";
      for (int b : f.blocks) {
        const auto& blk = g.block(b);
        os << "  block " << b << " " << flowgraph::to_string(blk.primitive);
        if (blk.primitive == Primitive::Algo) os << " " << blk.name;
        os << " " << blk.label << "\n";
      }
      for (const auto& w : f.outgoing) {
        os << "  " << to_string(w.kind) << " " << w.from_block << "->" << w.to_block
           << " to=" << s.devices[static_cast<std::size_t>(w.to_device)].alias << " fragment=" << w.to_fragment
           << " bytes=" << w.payload_bytes << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace

std::vector<CodeArtifact> render(const Schedule& s, const FlowGraph& g, Style style) {
  std::vector<CodeArtifact> out;
  if (s.fragments.empty()) return out;
  if (style == Style::Manifest) {
    out.push_back({"", ArtifactKind::Manifest, "manifest.txt", manifest(s, g)});
    return out;
  }
  for (std::size_t d = 0; d < s.devices.size(); ++d) {
    if (s.per_device[d].empty()) continue;
    const auto& dev = s.devices[d];
    out.push_back({dev.alias, dev.is_edge ? ArtifactKind::EdgeSkeleton : ArtifactKind::DeviceSkeleton,
                   dev.alias + "/" + s.app + ".c", device_file(s, g, static_cast<int>(d))});
  }
  return out;
}

void write_artifacts(const std::vector<CodeArtifact>& artifacts, const std::string& dir) {
  namespace fs = std::filesystem;
  for (const auto& a : artifacts) {
    fs::path path = fs::path(dir) / a.path;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    out << a.text;
  }
}

}  // namespace edgeprog::codegen
