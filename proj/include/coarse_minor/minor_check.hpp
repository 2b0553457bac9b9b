#pragma once

#include <coarse_minor/fat_model.hpp>
#include <coarse_minor/graph.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace coarse_minor {

struct MinorBudget {
  std::uint64_t max_nodes = 200'000'000;  // search nodes across all blocks
  double max_seconds = 0.0;               // 0 disables the clock
};

struct MinorQuery {
  const Graph* host = nullptr;
  PatternGraph pattern;
  MinorBudget budget;
  std::uint32_t max_pattern_vertices = 12;
  bool density_prefilter = false;  // advisory hint only
};

struct MinorResult {
  enum class Answer { No, Yes, Unknown };
  Answer answer = Answer::No;
  std::optional<FatModel> certificate;  // 0-fat model when Yes
  std::uint64_t nodes_explored = 0;
  std::string hint;                     // density prefilter verdict, if enabled
};

std::string to_string(MinorResult::Answer a);

// Exact search over branch-set assignments; the certificate is the first
// model met in a fixed search order, so repeated calls give the same one.
MinorResult has_minor(const MinorQuery& q);

}  // namespace coarse_minor
