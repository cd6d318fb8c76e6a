#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "edgeprog/codegen/render.hpp"
#include "edgeprog/dsl/parser.hpp"
#include "edgeprog/flowgraph/lower.hpp"
#include "edgeprog/partitioner/solver.hpp"
#include "testing.hpp"

using namespace edgeprog;
using namespace edgeprog::codegen;
using flowgraph::Benchmark;
using flowgraph::LogicBlock;
using flowgraph::Placement;
using flowgraph::Primitive;
using partitioner::Objective;
using profiles::ProfileSet;

namespace {

ProfileSet load(const char* rel) { return profiles::load_profiles(edgeprog::testing::data_path(rel)); }

FlowGraph program_graph(const char* rel, const ProfileSet& p) {
  return flowgraph::lower(dsl::parse_program(edgeprog::testing::read_data(rel)), p.sizes());
}

LogicBlock blk(int id, Primitive p, Placement pl, std::int64_t out, const std::string& name = "") {
  LogicBlock b;
  b.id = id;
  b.primitive = p;
  b.name = name.empty() ? flowgraph::to_string(p) : name;
  b.label = b.name + std::to_string(id);
  b.placement = std::move(pl);
  b.output_bytes = out;
  return b;
}

// SAMPLE -> F -> G -> ACTUATE, all on A, F and G 6 ms each.
FlowGraph local_chain() {
  return FlowGraph("chain", {{"A", "Mote", false}, {"Edge", "Edge", true}},
                   {blk(0, Primitive::Sample, Placement::pinned_to(0), 4),
                    blk(1, Primitive::Algo, Placement::movable({0, 1}), 4, "F"),
                    blk(2, Primitive::Algo, Placement::movable({0, 1}), 4, "G"),
                    blk(3, Primitive::Actuate, Placement::pinned_to(0), 0)},
                   {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}});
}

ProfileSet chain_profile() {
  ProfileSet p;
  p.set_name("chain");
  p.set_link("*", "*", profiles::LinkRow{"L", 10, Duration{1000}, std::nullopt});
  p.set_power("*", profiles::PowerRow{Power{1}, Power{1}, Power{1}});
  p.set_compute("F", "*", Duration::from_ms(6));
  p.set_compute("G", "*", Duration::from_ms(6));
  return p;
}

std::vector<std::pair<int, int>> graph_edges(const FlowGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.from, e.to);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t pos(const std::string& text, const std::string& needle, std::size_t from = 0) {
  const auto p = text.find(needle, from);
  EXPECT_NE(p, std::string::npos) << needle;
  return p;
}

}  // namespace

TEST(Fragment, SingleDeviceChainIsOneFragment) {
  auto g = local_chain();
  auto s = fragment(g, {0, 0, 0, 0}, chain_profile());
  ASSERT_EQ(s.fragments.size(), 1u);
  const auto& f = s.fragments[0];
  EXPECT_EQ(f.blocks, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_TRUE(f.timer_polled);
  EXPECT_EQ(f.compute, Duration::from_ms(12));
  EXPECT_EQ(f.internal.size(), 3u);
  EXPECT_TRUE(f.outgoing.empty());
  EXPECT_EQ(s.send_count(), 0u);
}

TEST(Fragment, BudgetSplitsIntoLocalHop) {
  auto g = local_chain();
  FragmentOptions o;
  o.budget = Duration::from_ms(10);
  auto s = fragment(g, {0, 0, 0, 0}, chain_profile(), o);
  ASSERT_EQ(s.fragments.size(), 2u);
  EXPECT_EQ(s.fragments[0].blocks, (std::vector<int>{0, 1}));
  EXPECT_EQ(s.fragments[1].blocks, (std::vector<int>{2, 3}));
  ASSERT_EQ(s.fragments[0].outgoing.size(), 1u);
  EXPECT_EQ(s.fragments[0].outgoing[0].kind, WireKind::LocalHop);
  EXPECT_EQ(s.fragments[1].incoming, (std::vector<int>{0}));
  EXPECT_FALSE(s.fragments[1].timer_polled);
  EXPECT_EQ(s.send_count(), 0u);
  for (const auto& f : s.fragments) EXPECT_LE(f.compute, o.budget);
}

TEST(Fragment, SmartDoorTrace) {
  auto p = load(edgeprog::testing::kZigbee);
  auto g = program_graph("programs/smart_door.eprog", p);
  // Device work on A and B, CONJ on the edge, both actions back on A.
  partitioner::Assignment a{0, 0, 0, 1, 1, 2, 0, 0, 0, 0};
  ASSERT_EQ(g.devices()[2].alias, "Edge");
  auto s = fragment(g, a, p);
  ASSERT_EQ(s.fragments.size(), 5u);
  std::vector<std::vector<int>> blocks;
  std::vector<int> devices;
  for (const auto& f : s.fragments) {
    blocks.push_back(f.blocks);
    devices.push_back(f.device);
  }
  EXPECT_EQ(blocks, (std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}, {5}, {6, 7}, {8, 9}}));
  EXPECT_EQ(devices, (std::vector<int>{0, 1, 2, 0, 0}));
  EXPECT_TRUE(s.fragments[0].timer_polled);
  EXPECT_TRUE(s.fragments[1].timer_polled);
  EXPECT_FALSE(s.fragments[2].timer_polled);
  EXPECT_EQ(s.fragments[2].incoming, (std::vector<int>{0, 1}));
  EXPECT_EQ(s.send_count(), 4u);
  EXPECT_EQ(s.per_device[0], (std::vector<int>{0, 3, 4}));
  EXPECT_EQ(s.per_device[2], (std::vector<int>{2}));
}

TEST(Fragment, ExpandRecoversEveryEdge) {
  for (const char* prof : {edgeprog::testing::kZigbee, edgeprog::testing::kWifi}) {
    auto p = load(prof);
    for (auto b : flowgraph::kAllBenchmarks) {
      auto g = flowgraph::benchmark_graph(b);
      for (auto m : {Objective::Latency, Objective::Energy}) {
        auto part = partitioner::solve(g, p, m);
        for (std::int64_t budget_ms : {128, 1}) {
          FragmentOptions o;
          o.budget = Duration::from_ms(budget_ms);
          auto s = fragment(g, part.assignment, p, o);
          auto got = expand(s);
          std::sort(got.begin(), got.end());
          EXPECT_EQ(got, graph_edges(g)) << to_string(b);
          EXPECT_EQ(static_cast<int>(s.send_count()), part.cross_edges) << to_string(b);
          // Each block in exactly one fragment, on its assigned device.
          std::vector<int> seen(g.blocks().size(), 0);
          for (const auto& f : s.fragments) {
            for (int id : f.blocks) {
              ++seen[static_cast<std::size_t>(id)];
              EXPECT_EQ(part.assignment[static_cast<std::size_t>(id)], f.device);
            }
          }
          for (int n : seen) EXPECT_EQ(n, 1);
        }
      }
    }
  }
}

TEST(Fragment, TopologicalOrder) {
  auto p = load(edgeprog::testing::kZigbee);
  auto g = flowgraph::benchmark_graph(Benchmark::SHOW);
  auto part = partitioner::solve(g, p, Objective::Energy);
  auto s = fragment(g, part.assignment, p);
  std::vector<int> frag_of(g.blocks().size());
  for (const auto& f : s.fragments) {
    for (int id : f.blocks) frag_of[static_cast<std::size_t>(id)] = f.id;
  }
  for (const auto& e : g.edges()) {
    EXPECT_LE(frag_of[static_cast<std::size_t>(e.from)], frag_of[static_cast<std::size_t>(e.to)]);
  }
}

TEST(Render, ContikiSkeletonLayout) {
  auto p = load(edgeprog::testing::kZigbee);
  auto g = program_graph("programs/smart_door.eprog", p);
  auto s = fragment(g, {0, 0, 0, 1, 1, 2, 0, 0, 0, 0}, p);
  auto arts = render(s, g, Style::ContikiLike);
  ASSERT_EQ(arts.size(), 3u);
  EXPECT_EQ(arts[0].path, "A/SmartDoor.c");
  EXPECT_EQ(arts[2].path, "Edge/SmartDoor.c");
  EXPECT_EQ(arts[2].kind, ArtifactKind::EdgeSkeleton);
  EXPECT_EQ(arts[0].kind, ArtifactKind::DeviceSkeleton);

  const std::string& t = arts[0].text;
  const auto decl = pos(t, "PROCESS(frag0_process");
  const auto autostart = pos(t, "AUTOSTART_PROCESSES(");
  const auto thread = pos(t, "PROCESS_THREAD(frag0_process");
  EXPECT_LT(decl, autostart);
  EXPECT_LT(autostart, thread);
  const auto begin = pos(t, "PROCESS_BEGIN();", thread);
  const auto set = pos(t, "etimer_set(&et_frag0", begin);
  const auto loop = pos(t, "while(1){", set);
  const auto yield = pos(t, "PROCESS_YIELD();", loop);
  const auto expired = pos(t, "if (etimer_expired(&et_frag0)){", yield);
  const auto sample = pos(t, "v0 = SAMPLE(\"A.MIC\");", expired);
  const auto mfcc = pos(t, "v1 = MFCC(v0);", sample);
  const auto gmm = pos(t, "v2 = GMM(v1", mfcc);
  const auto post = pos(t, "process_post(&send_process, send_evt, &to_send0);", gmm);
  const auto reset = pos(t, "etimer_reset(&et_frag0);", post);
  pos(t, "PROCESS_END();", reset);
  // Event fragments wait on the fragment event and read remote input.
  const auto f3 = pos(t, "PROCESS_THREAD(frag3_process");
  pos(t, "PROCESS_WAIT_EVENT_UNTIL(ev == frag_evt);", f3);
  pos(t, "ep_input(5)", f3);
  pos(t, "case 6: process_post(&frag3_process, frag_evt, NULL); break;");
  pos(t, "ep_net_open(recv_callback);");
  // Braces balance.
  EXPECT_EQ(std::count(t.begin(), t.end(), '{'), std::count(t.begin(), t.end(), '}'));
  EXPECT_EQ(std::count(t.begin(), t.end(), '('), std::count(t.begin(), t.end(), ')'));
}

TEST(Render, LocalHopPostsToNextFragment) {
  auto g = local_chain();
  FragmentOptions o;
  o.budget = Duration::from_ms(10);
  auto s = fragment(g, {0, 0, 0, 0}, chain_profile(), o);
  auto arts = render(s, g, Style::ContikiLike);
  ASSERT_EQ(arts.size(), 1u);
  const auto& t = arts[0].text;
  const auto f0 = pos(t, "PROCESS_THREAD(frag0_process");
  const auto hop = pos(t, "process_post(&frag1_process, frag_evt, NULL);", f0);
  EXPECT_LT(hop, pos(t, "PROCESS_THREAD(frag1_process"));
  pos(t, "v2 = G(v1);", pos(t, "PROCESS_THREAD(frag1_process"));
}

TEST(Render, ManifestHasSectionPerDevice) {
  auto p = load(edgeprog::testing::kZigbee);
  auto g = program_graph("programs/smart_home_env.eprog", p);
  auto part = partitioner::solve(g, p, Objective::Energy);
  auto s = fragment(g, part.assignment, p);
  auto arts = render(s, g, Style::Manifest);
  ASSERT_EQ(arts.size(), 1u);
  EXPECT_EQ(arts[0].path, "manifest.txt");
  EXPECT_EQ(arts[0].kind, ArtifactKind::Manifest);
  const auto& t = arts[0].text;
  std::vector<std::string> sections;
  std::istringstream in(t);
  std::string line;
  int block_lines = 0, sends = 0;
  while (std::getline(in, line)) {
    if (line.rfind("[device ", 0) == 0) sections.push_back(line.substr(8, line.size() - 9));
    if (line.rfind("  block ", 0) == 0) ++block_lines;
    if (line.rfind("  send ", 0) == 0) ++sends;
  }
  EXPECT_EQ(sections, (std::vector<std::string>{"A", "B", "E"}));
  EXPECT_EQ(block_lines, static_cast<int>(g.blocks().size()));
  EXPECT_EQ(sends, part.cross_edges);
  EXPECT_NE(t.find("sends " + std::to_string(part.cross_edges) + "\n"), std::string::npos);
}

TEST(Render, EmptyScheduleRendersNothing) {
  Schedule s;
  FlowGraph g("empty", {}, {}, {});
  EXPECT_TRUE(render(s, g, Style::ContikiLike).empty());
  EXPECT_TRUE(render(s, g, Style::Manifest).empty());
}

TEST(Render, Deterministic) {
  auto p = load(edgeprog::testing::kWifi);
  auto g = flowgraph::benchmark_graph(Benchmark::EEG);
  auto part = partitioner::solve(g, p, Objective::Latency);
  for (auto style : {Style::ContikiLike, Style::Manifest}) {
    auto a = render(fragment(g, part.assignment, p), g, style);
    auto b = render(fragment(g, part.assignment, p), g, style);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].path, b[i].path);
      EXPECT_EQ(a[i].text, b[i].text);
    }
  }
}

TEST(Render, WriteArtifacts) {
  const auto dir = std::filesystem::temp_directory_path() / "edgeprog_codegen_test";
  std::filesystem::remove_all(dir);
  std::vector<CodeArtifact> arts{{"A", ArtifactKind::DeviceSkeleton, "A/app.c", "int x;\n"},
                                 {"", ArtifactKind::Manifest, "manifest.txt", "app x\n"}};
  write_artifacts(arts, dir.string());
  std::ifstream in(dir / "A" / "app.c");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "int x;\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.txt"));
  std::filesystem::remove_all(dir);
  // A regular file where a directory is needed.
  std::ofstream(dir.string()) << "x";
  EXPECT_THROW(write_artifacts(arts, dir.string()), Error);
  std::filesystem::remove(dir);
}
