#pragma once

#include <optional>
#include <string>

#include "edgeprog/partitioner/baselines.hpp"

namespace edgeprog::partitioner {

enum class Format { Text, Csv, JsonLike };

const char* to_string(Format f);
std::optional<Format> format_from_name(const std::string& name);

// Serializations documented in README.md. None of them carries wall time,
// so equal inputs always produce byte-identical text.
std::string format_partition(const FlowGraph& g, const ProfileSet& p, const Partition& part, Format f);
std::string format_comparison(const FlowGraph& g, const ComparisonReport& r, Format f,
                              const WishboneSweep* sweep = nullptr);

// "edge" when the block runs on the edge device, "device" otherwise.
const char* side_of(const FlowGraph& g, const Assignment& a, int block);

}  // namespace edgeprog::partitioner
