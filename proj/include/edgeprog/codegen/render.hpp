#pragma once

#include <string>
#include <vector>

#include "edgeprog/codegen/fragment.hpp"

namespace edgeprog::codegen {

enum class Style { ContikiLike, Manifest };

enum class ArtifactKind { DeviceSkeleton, EdgeSkeleton, Manifest };

struct CodeArtifact {
  std::string device;  // empty for the manifest
  ArtifactKind kind = ArtifactKind::DeviceSkeleton;
  std::string path;    // relative: "<device>/<app>.c" or "manifest.txt"
  std::string text;
};

// ContikiLike: one C skeleton per device that runs at least one fragment,
// with a protothread per fragment and one send_process. Manifest: a single
// manifest.txt with one section per device. An empty schedule renders to
// nothing.
std::vector<CodeArtifact> render(const Schedule& s, const FlowGraph& g, Style style);

// Writes artifacts under `dir`, creating subdirectories.
void write_artifacts(const std::vector<CodeArtifact>& artifacts, const std::string& dir);

}  // namespace edgeprog::codegen
