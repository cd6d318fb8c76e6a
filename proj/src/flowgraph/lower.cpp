#include "edgeprog/flowgraph/lower.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "edgeprog/dsl/parser.hpp"
#include "edgeprog/error.hpp"

namespace edgeprog::flowgraph {

namespace {

constexpr int kEdgeOrigin = -1;

struct VSensorOut {
  std::vector<int> last;     // blocks of the final stage group
  std::set<int> samples;     // every SAMPLE feeding it, transitively
};

class Lowerer {
 public:
  Lowerer(const dsl::ProgramAst& ast, const profiles::TypeSizeTable& sizes) : ast_(ast), sizes_(sizes) {
    for (const auto& d : ast_.devices) {
      devices_.push_back({d.alias, d.platform_name, d.is_edge()});
      if (d.is_edge()) edge_ = static_cast<int>(devices_.size()) - 1;
    }
    if (edge_ < 0) {
      devices_.push_back({"Edge", "Edge", true});
      edge_ = static_cast<int>(devices_.size()) - 1;
    }
  }

  FlowGraph run() {
    int rule_no = 0;
    for (const auto& rule : ast_.rules) {
      ++rule_no;
      const std::int64_t interval = rule.interval_ms.value_or(1000);
      auto leaves = dsl::comparisons(rule.condition);
      if (leaves.empty()) {
        throw Error(ErrorKind::EmptyCondition, "rule " + std::to_string(rule_no) + " has no condition");
      }
      std::vector<int> cond_outputs;
      for (const dsl::Comparison* c : leaves) {
        if (c->subject.is_vsensor()) {
          const VSensorOut& out = vsensor(c->subject.name);
          for (int s : out.samples) touch_interval(s, interval);
          cond_outputs.insert(cond_outputs.end(), out.last.begin(), out.last.end());
        } else {
          int s = sample(c->subject);
          touch_interval(s, interval);
          LogicBlock b;
          b.primitive = Primitive::Cmp;
          b.name = "CMP";
          b.label = "CMP(" + c->subject.str() + " " + dsl::to_string(c->op) + " " + literal_text(c->value) + ")";
          b.source_args = {c->subject.str(), dsl::to_string(c->op), literal_text(c->value)};
          b.output_bytes = size_of("bool");
          cond_outputs.push_back(add(std::move(b), {s}));
        }
      }

      LogicBlock conj;
      conj.primitive = Primitive::Conj;
      conj.name = "CONJ";
      conj.label = "CONJ(rule " + std::to_string(rule_no) + ")";
      conj.output_bytes = size_of("bool");
      conj.placement = Placement::pinned_to(edge_);
      int conj_id = add(std::move(conj), cond_outputs);

      for (const auto& act : rule.actions) {
        int dev = device_of(act.device, act.loc);
        std::string what = act.device + "." + act.action;

        LogicBlock aux;
        aux.primitive = Primitive::Aux;
        aux.name = "AUX";
        aux.label = "AUX(" + what + ")";
        aux.output_bytes = size_of("bool");
        aux.placement = Placement::movable(sorted_candidates({edge_, dev}));
        int aux_id = add(std::move(aux), {conj_id});

        LogicBlock a;
        a.primitive = Primitive::Actuate;
        a.name = "ACTUATE";
        a.label = "ACTUATE(" + what + ")";
        a.source_args = {what};
        a.source_args.insert(a.source_args.end(), act.args.begin(), act.args.end());
        a.output_bytes = 0;
        a.placement = Placement::pinned_to(dev);
        add(std::move(a), {aux_id});
      }
    }
    return FlowGraph(ast_.name, devices_, std::move(blocks_), std::move(edges_));
  }

 private:
  static std::string literal_text(const dsl::Literal& l) {
    return l.kind == dsl::Literal::Kind::String ? "\"" + l.text + "\"" : l.text;
  }

  std::int64_t size_of(const std::string& key) const {
    auto s = sizes_.find(key);
    if (!s) throw Error(ErrorKind::MissingSize, "MissingSize(" + key + "): no payload size for '" + key + "'");
    return *s;
  }

  int device_of(const std::string& alias, const dsl::SourceLoc& loc) const {
    for (std::size_t d = 0; d < devices_.size(); ++d) {
      if (devices_[d].alias == alias) return static_cast<int>(d);
    }
    throw Error(ErrorKind::UnknownReference, std::to_string(loc.line) + ":" + std::to_string(loc.col) +
                                                 ": unknown device '" + alias + "'");
  }

  std::vector<int> sorted_candidates(std::vector<int> devs) const {
    std::sort(devs.begin(), devs.end(), [&](int a, int b) {
      return devices_[static_cast<std::size_t>(a)].alias < devices_[static_cast<std::size_t>(b)].alias;
    });
    devs.erase(std::unique(devs.begin(), devs.end()), devs.end());
    return devs;
  }

  // Appends a block fed by `preds`; movable blocks without a preset
  // placement get their candidates from the origin of their inputs.
  int add(LogicBlock b, const std::vector<int>& preds) {
    const int id = static_cast<int>(blocks_.size());
    b.id = id;
    std::set<int> origin;
    std::set<int> seen;
    for (int p : preds) {
      if (!seen.insert(p).second) continue;
      edges_.push_back({p, id, blocks_[static_cast<std::size_t>(p)].output_bytes});
      origin.insert(origins_[static_cast<std::size_t>(p)].begin(), origins_[static_cast<std::size_t>(p)].end());
    }
    if (b.primitive == Primitive::Conj) origin = {kEdgeOrigin};
    if (b.placement.candidates.empty()) {
      if (origin.size() == 1 && *origin.begin() != kEdgeOrigin) {
        b.placement = Placement::movable(sorted_candidates({*origin.begin(), edge_}));
      } else {
        b.placement = Placement::movable({edge_});
      }
    }
    blocks_.push_back(std::move(b));
    origins_.push_back(std::move(origin));
    return id;
  }

  int sample(const dsl::Ref& ref) {
    const std::string key = ref.str();
    if (auto it = samples_.find(key); it != samples_.end()) return it->second;
    int dev = device_of(ref.device, ref.loc);
    LogicBlock b;
    b.primitive = Primitive::Sample;
    b.name = "SAMPLE";
    b.label = "SAMPLE(" + key + ")";
    b.source_args = {key};
    auto sz = sizes_.find(key);
    if (!sz) sz = sizes_.find(ref.name);
    b.output_bytes = sz ? *sz : size_of("numeric");
    b.interval_ms = 0;  // filled in by touch_interval
    b.placement = Placement::pinned_to(dev);
    const int id = static_cast<int>(blocks_.size());
    b.id = id;
    blocks_.push_back(std::move(b));
    origins_.push_back(devices_[static_cast<std::size_t>(dev)].is_edge ? std::set<int>{kEdgeOrigin}
                                                                       : std::set<int>{dev});
    samples_[key] = id;
    return id;
  }

  // A SAMPLE shared by several rules polls at the fastest of their rates.
  void touch_interval(int sample_id, std::int64_t interval) {
    auto& b = blocks_[static_cast<std::size_t>(sample_id)];
    b.interval_ms = b.interval_ms == 0 ? interval : std::min(b.interval_ms, interval);
  }

  const VSensorOut& vsensor(const std::string& name) {
    if (auto it = vsensors_.find(name); it != vsensors_.end()) return it->second;
    const dsl::VSensorDecl* v = ast_.find_vsensor(name);
    if (!v) throw Error(ErrorKind::UnknownReference, "unknown virtual sensor '" + name + "'");
    if (!in_progress_.insert(name).second) {
      throw Error(ErrorKind::CyclicVSensor, "virtual sensor '" + name + "' depends on itself");
    }

    VSensorOut out;
    std::vector<int> inputs;
    for (const auto& in : v->inputs) {
      if (in.is_vsensor()) {
        const VSensorOut& up = vsensor(in.name);
        inputs.insert(inputs.end(), up.last.begin(), up.last.end());
        out.samples.insert(up.samples.begin(), up.samples.end());
      } else {
        int s = sample(in);
        inputs.push_back(s);
        out.samples.insert(s);
      }
    }

    if (v->auto_infer) {
      LogicBlock b;
      b.primitive = Primitive::Algo;
      b.name = "AUTO(" + v->name + ")";
      b.label = b.name;
      b.output_bytes = final_size(*v, b.name);
      out.last = {add(std::move(b), inputs)};
    } else {
      std::vector<int> prev = inputs;
      for (std::size_t gi = 0; gi < v->groups.size(); ++gi) {
        const bool last_group = gi + 1 == v->groups.size();
        std::vector<int> cur;
        for (const auto& stage_name : v->groups[gi]) {
          const dsl::StageDecl* st = v->find_stage(stage_name);
          if (!st || st->model.empty()) {
            throw Error(ErrorKind::UnknownReference,
                        "stage '" + stage_name + "' of '" + v->name + "' has no model");
          }
          LogicBlock b;
          b.primitive = Primitive::Algo;
          b.name = st->model;
          b.label = v->name + "." + st->name + ":" + st->model;
          b.source_args = st->model_args;
          b.output_bytes = last_group ? final_size(*v, st->model) : size_of(st->model);
          cur.push_back(add(std::move(b), prev));
        }
        prev = std::move(cur);
      }
      out.last = std::move(prev);
    }
    in_progress_.erase(name);
    return vsensors_.emplace(name, std::move(out)).first->second;
  }

  std::int64_t final_size(const dsl::VSensorDecl& v, const std::string& fallback) const {
    if (!v.output_type.empty()) {
      if (auto s = sizes_.find(v.output_type)) return *s;
    }
    return size_of(fallback);
  }

  const dsl::ProgramAst& ast_;
  const profiles::TypeSizeTable& sizes_;
  std::vector<Device> devices_;
  int edge_ = -1;
  std::vector<LogicBlock> blocks_;
  std::vector<DataEdge> edges_;
  std::vector<std::set<int>> origins_;
  std::map<std::string, int> samples_;
  std::map<std::string, VSensorOut> vsensors_;
  std::set<std::string> in_progress_;
};

}  // namespace

FlowGraph lower(const dsl::ProgramAst& ast, const profiles::TypeSizeTable& sizes) {
  return Lowerer(ast, sizes).run();
}

// ---------------------------------------------------------------------------
// Bundled benchmarks. Operator counts (ALGO + CMP blocks): Sense 8, MNSVG 4,
// EEG 80, SHOW 13, Voice 10.

const char* to_string(Benchmark b) {
  switch (b) {
    case Benchmark::Sense: return "Sense";
    case Benchmark::MNSVG: return "MNSVG";
    case Benchmark::EEG: return "EEG";
    case Benchmark::SHOW: return "SHOW";
    case Benchmark::Voice: return "Voice";
  }
  return "?";
}

std::optional<Benchmark> benchmark_from_name(const std::string& name) {
  for (Benchmark b : kAllBenchmarks) {
    if (name == to_string(b)) return b;
  }
  return std::nullopt;
}

namespace {

const char* kSense = R"(Application Sense{
	Configuration{
		Node T(TEMPERATURE);
		Node L(LIGHT);
		Edge E(Alert);
	}
	Implementation{
		VSensor TempOutlier("AVG, OUT, LEC"){
			TempOutlier.setInput(T.TEMPERATURE);
			AVG.setModel("Average");
			OUT.setModel("MatMul");
			LEC.setModel("LEC");
			TempOutlier.setOutput(<float_t>);
		}
		VSensor LightOutlier("AVG, OUT, LEC"){
			LightOutlier.setInput(L.LIGHT);
			AVG.setModel("Average");
			OUT.setModel("MatMul");
			LEC.setModel("LEC");
			LightOutlier.setOutput(<float_t>);
		}
	}
	Rule{
		IF(TempOutlier > 3 && LightOutlier > 3 && T.TEMPERATURE > 40 && L.LIGHT < 10)
		THEN(E.Alert)
	}
}
)";

const char* kMNSVG = R"(Application MNSVG{
	Configuration{
		Node T(TEMPERATURE);
		Node H(HUMIDITY);
		Edge E(Alert);
	}
	Implementation{
		VSensor TempPred("PRED"){
			TempPred.setInput(T.TEMPERATURE);
			PRED.setModel("MNSVG");
			TempPred.setOutput(<float_t>);
		}
		VSensor HumPred("PRED"){
			HumPred.setInput(H.HUMIDITY);
			PRED.setModel("MNSVG");
			HumPred.setOutput(<float_t>);
		}
	}
	Rule{
		IF(TempPred > 30 && HumPred > 70 && T.TEMPERATURE > 25 && H.HUMIDITY > 60)
		THEN(E.Alert)
	}
}
)";

std::string eeg_source() {
  std::ostringstream os;
  os << "Application EEG{\n\tConfiguration{\n";
  for (int k = 1; k <= 10; ++k) os << "\t\tNode C" << k << "(EEG);\n";
  os << "\t\tEdge E(Alarm);\n\t}\n\tImplementation{\n";
  for (int k = 1; k <= 10; ++k) {
    os << "\t\tVSensor Ch" << k << "(\"L1, L2, L3, L4, L5, L6, L7, SVM\"){\n";
    os << "\t\t\tCh" << k << ".setInput(C" << k << ".EEG);\n";
    for (int l = 1; l <= 7; ++l) os << "\t\t\tL" << l << ".setModel(\"DWT\");\n";
    os << "\t\t\tSVM.setModel(\"SVM\");\n";
    os << "\t\t\tCh" << k << ".setOutput(<float_t>);\n\t\t}\n";
  }
  os << "\t}\n\tRule{\n\t\tIF(";
  for (int k = 1; k <= 10; ++k) os << (k > 1 ? " || " : "") << "Ch" << k << " > 0.5";
  os << ")\n\t\tTHEN(E.Alarm)\n\t}\n}\n";
  return os.str();
}

const char* kSHOW = R"(Application SHOW{
	Configuration{
		Node W(ACCEL, Vibrate);
	}
	Implementation{
		VSensor Handwriting("FRM, FFT, {T1, T2, T3, T4, T5, T6, T7, T8, T9, T10}, VOTE"){
			Handwriting.setInput(W.ACCEL);
			FRM.setModel("Framing");
			FFT.setModel("FFT");
			T1.setModel("RandomForest");
			T2.setModel("RandomForest");
			T3.setModel("RandomForest");
			T4.setModel("RandomForest");
			T5.setModel("RandomForest");
			T6.setModel("RandomForest");
			T7.setModel("RandomForest");
			T8.setModel("RandomForest");
			T9.setModel("RandomForest");
			T10.setModel("RandomForest");
			VOTE.setModel("Vote");
			Handwriting.setOutput(<string_t>, "circle");
		}
	}
	Rule{
		IF(Handwriting == "circle")
		THEN(W.Vibrate)
	}
}
)";

const char* kVoice = R"(Application Voice{
	Configuration{
		Node M(MIC, LED);
		Edge E(Log);
	}
	Implementation{
		VSensor Speakers("PRE, FRM, WIN, FFT, MEL, {MFCC, PITCH}, CAT, CLU"){
			Speakers.setInput(M.MIC);
			PRE.setModel("PreEmphasis");
			FRM.setModel("Framing");
			WIN.setModel("WindowSlicing");
			FFT.setModel("FFT");
			MEL.setModel("MelFilter");
			MFCC.setModel("MFCC");
			PITCH.setModel("PitchEstimation");
			CAT.setModel("Concat");
			CLU.setModel("Clustering");
			Speakers.setOutput(<int_t>);
		}
	}
	Rule{
		IF(Speakers > 1 && M.MIC > 40)
		THEN(M.LED && E.Log)
	}
}
)";

}  // namespace

std::string benchmark_source(Benchmark b) {
  switch (b) {
    case Benchmark::Sense: return kSense;
    case Benchmark::MNSVG: return kMNSVG;
    case Benchmark::EEG: return eeg_source();
    case Benchmark::SHOW: return kSHOW;
    case Benchmark::Voice: return kVoice;
  }
  return {};
}

profiles::TypeSizeTable benchmark_sizes() {
  profiles::TypeSizeTable t;
  const std::pair<const char*, std::int64_t> rows[] = {
      {"TEMPERATURE", 240}, {"LIGHT", 240},          {"HUMIDITY", 192},   {"Average", 120},
      {"MatMul", 120},      {"LEC", 60},             {"MNSVG", 4},        {"EEG", 512},
      {"DWT", 128},         {"SVM", 4},              {"ACCEL", 1200},     {"Framing", 1200},
      {"FFT", 600},         {"RandomForest", 4},     {"Vote", 16},        {"string_t", 16},
      {"MIC", 8000},        {"PreEmphasis", 8000},   {"WindowSlicing", 2400},
      {"MelFilter", 640},   {"MFCC", 320},           {"PitchEstimation", 40},
      {"Concat", 360},      {"Clustering", 4},
  };
  for (const auto& [k, v] : rows) t.set(k, v);
  return t;
}

FlowGraph benchmark_graph(Benchmark b) { return lower(dsl::parse_program(benchmark_source(b)), benchmark_sizes()); }

}  // namespace edgeprog::flowgraph
