#pragma once

#include <coarse_minor/graph.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coarse_minor {

class MergeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MergeProblem {
  const Graph* host = nullptr;
  // Optional restriction of the host to an induced subgraph: host_mask[v] != 0
  // keeps v. Empty means the whole host.
  std::shared_ptr<const std::vector<std::uint8_t>> host_mask;
  std::vector<VertexSet> q_family;
  Distance d = 0;
  Distance r = 0;
  std::optional<Distance> diameter_bound;  // D, when every member of q_family has diameter <= D
};

struct MergeResult {
  std::vector<VertexSet> p_family;                   // ordered by minimum vertex
  Distance level = 0;                                // L
  std::vector<std::vector<std::uint32_t>> provenance;  // indices into q_family
  std::uint32_t merges = 0;
};

MergeResult merge_partition(const MergeProblem& p);

// Independent re-check of the three postconditions and the bounds on L.
// Returns human-readable violations; empty means all hold.
std::vector<std::string> check_merge_result(const MergeProblem& p, const MergeResult& r);

}  // namespace coarse_minor
