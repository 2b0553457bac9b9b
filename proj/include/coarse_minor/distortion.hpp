#pragma once

#include <coarse_minor/fat_model.hpp>
#include <coarse_minor/minor_check.hpp>
#include <coarse_minor/partition.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coarse_minor {

struct DistortionOptions {
  std::uint32_t t = 3;
  ProfileMode mode = ProfileMode::PaperExact;
  ScaledOverrides scaled;        // Scaled mode only; applied at fatness 3K
  bool exhaustive = false;       // K = 1, 2, ..., n instead of doubling + bisection
  bool paranoid = false;         // re-verify every stored object
  unsigned jobs = 1;
  std::optional<Vertex> root;
  std::uint64_t max_k = 0;       // 0 means |V(G)|
  MinorBudget minor_budget;
  QIOptions qi;
};

struct Attempt {
  enum class Outcome { Success, Failure, Unknown, Error };
  std::uint64_t k = 0;
  Outcome outcome = Outcome::Error;
  ConstantsProfile profile;                  // the builder runs at fatness 3K
  std::optional<LayeredPartition> partition; // kept for Success
  std::size_t h_nodes = 0, h_edges = 0;
  std::string provenance;                    // which step produced the outcome
  std::optional<FatModel> witness;           // K-fat K_{2,t} on Failure
  std::uint64_t minor_nodes = 0;
  std::string note;
};

std::string to_string(Attempt::Outcome o);

struct StarAugmented {
  Graph h;
  std::vector<NodeId> phi;  // injective
  std::size_t leaves_added = 0;
};

// Nodes with c >= 2 preimages get c - 1 fresh leaves; the smallest preimage
// stays on the node and the others move to the leaves in ascending order.
StarAugmented star_augment(const Graph& h, const std::vector<NodeId>& phi);

struct DistortionReport {
  std::uint32_t t = 3;
  std::uint64_t k_min = 0;  // 0 if no attempt succeeded
  std::vector<Attempt> attempts;  // ascending K
  std::optional<StarAugmented> embedding;
  std::optional<QIReport> qi_h;          // vertex -> bag map into H at K_min
  std::optional<QIReport> qi_augmented;  // injective map into H'
  double measured_M = 0.0;
  double measured_A = 0.0;
  std::optional<FatModel> lower_bound_witness;  // (K_min - 1)-fat K_{2,t}
  std::string bracket;
  bool paranoid = false;
  std::vector<std::string> paranoid_failures;
  std::vector<std::string> warnings;
};

DistortionReport approximate_distortion(const Graph& g, const DistortionOptions& options);

// Composes a 0-fat model of `inner` inside J with a fat model of J in G.
// `j_model.pattern` must be J with vertices numbered as in `inner`'s host.
FatModel compose_models(const FatModel& j_model, const FatModel& inner, Distance fatness);

}  // namespace coarse_minor
