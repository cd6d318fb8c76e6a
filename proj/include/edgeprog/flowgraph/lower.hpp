#pragma once

#include <string>

#include "edgeprog/dsl/ast.hpp"
#include "edgeprog/flowgraph/flowgraph.hpp"

namespace edgeprog::flowgraph {

// Lowers a validated program into its logic-block DAG.
//
//  * a virtual-sensor condition pulls in the sensor's stage graph, with a
//    SAMPLE block per setInput interface;
//  * an interface condition becomes SAMPLE -> CMP;
//  * each rule gets one edge-pinned CONJ joining all condition outputs;
//  * each action becomes CONJ -> AUX -> ACTUATE.
//
// SAMPLE blocks are shared per interface. Ids follow declaration order.
// When no Edge device is declared an implicit one named "Edge" is appended.
//
// Payload sizes: SAMPLE looks up "<dev>.<iface>", then "<iface>", then
// "numeric"; an intermediate stage looks up its model; a virtual sensor's
// final stage looks up its declared output type, then its model; CMP, CONJ
// and AUX use "bool".
FlowGraph lower(const dsl::ProgramAst& ast, const profiles::TypeSizeTable& sizes);

enum class Benchmark { Sense, MNSVG, EEG, SHOW, Voice };

const char* to_string(Benchmark b);
std::optional<Benchmark> benchmark_from_name(const std::string& name);
inline constexpr Benchmark kAllBenchmarks[] = {Benchmark::Sense, Benchmark::MNSVG, Benchmark::EEG,
                                               Benchmark::SHOW, Benchmark::Voice};

std::string benchmark_source(Benchmark b);
profiles::TypeSizeTable benchmark_sizes();
FlowGraph benchmark_graph(Benchmark b);

}  // namespace edgeprog::flowgraph
