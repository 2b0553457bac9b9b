#pragma once

#include <coarse_minor/fat_model.hpp>
#include <coarse_minor/graph.hpp>
#include <coarse_minor/merging.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coarse_minor {

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProfileMode { PaperExact, Scaled };

struct ConstantsProfile {
  ProfileMode mode = ProfileMode::PaperExact;
  std::uint32_t t = 3;
  std::uint64_t k = 1;
  std::uint64_t N = 0;
  std::uint64_t L = 0;        // also written ell
  std::uint64_t L_prime = 0;
  std::uint64_t R0 = 0;
  std::uint64_t R = 0;
  // Scaled only: false when L' < 2L + 3K or L < ceil(3K/2), i.e. new bags
  // could not meet the height and depth ranges needed for extraction.
  bool hypotheses_enforceable = true;
};

ConstantsProfile compute_constants(std::uint32_t t, std::uint64_t k,
                                   ProfileMode mode = ProfileMode::PaperExact);

struct ScaledOverrides {
  std::optional<std::uint64_t> N;
  std::optional<std::uint64_t> L;
  std::optional<std::uint64_t> L_prime;
  std::optional<std::uint64_t> R0;
};

// Scaled profile: N defaults to 2; L and L' follow the formulas with that N;
// R0 defaults to the diameter bound obtained from two merging rounds over at
// most 2N sets.
ConstantsProfile scaled_profile(std::uint32_t t, std::uint64_t k, const ScaledOverrides& o = {});

using NodeId = std::uint32_t;

struct Bag {
  NodeId id = 0;
  std::uint32_t layer = 0;
  VertexSet vertices;
  VertexSet attachment;  // the root's attachment is {o}
  Distance height = 0;   // R_h
  Distance depth = 0;    // r_h
};

struct LayeredPartition {
  std::size_t vertex_count = 0;
  NodeId root = 0;
  std::vector<Bag> bags;  // indexed by node id
  std::vector<std::pair<NodeId, NodeId>> h_edges;  // g < h, sorted
  std::vector<NodeId> node_of;                     // vertex -> node

  Graph quotient() const;
  std::uint32_t layer_count() const;
  void rebuild_node_of();
};

struct BuildOptions {
  std::optional<Vertex> root;
  bool record_merges = false;
};

struct MergeRecord {
  std::uint32_t step = 0;
  std::uint32_t group = 0;
  std::string round;  // "first" (in G) or "second" (in G - G^n)
  MergeProblem problem;
  MergeResult result;
};

struct BuildOutcome {
  enum class Kind { Partition, Witness };
  Kind kind = Kind::Partition;
  ConstantsProfile profile;
  std::optional<LayeredPartition> partition;
  std::optional<FatModel> witness;  // Theta_t at fatness profile.k
  std::string witness_rule;
  std::uint32_t steps = 0;
  std::vector<MergeRecord> merges;
};

BuildOutcome build_partition(const Graph& g, const ConstantsProfile& profile,
                             const BuildOptions& options = {});

struct PartitionCheck {
  std::string check;  // short name such as "honesty" or "levelness"
  std::string detail;
};

struct PartitionReport {
  bool valid = true;
  std::vector<PartitionCheck> violations;
  Distance max_bag_diameter = 0;
  std::size_t close_pairs_separated = 0;  // non-adjacent close pairs resolved by a separator
};

PartitionReport verify_partition(const Graph& g, const LayeredPartition& lp, const ConstantsProfile& profile);

// K-fat model of a 2-connected subgraph J of H in G. J is given by its edge
// list in node ids; pattern vertex i is the i-th smallest node of J.
FatModel extract_fat_model(const Graph& g, const LayeredPartition& lp, const ConstantsProfile& profile,
                           const std::vector<std::pair<NodeId, NodeId>>& j_edges,
                           const PartitionReport* verified = nullptr);

// A shortest cycle of H through `node`, as a closed node sequence without the
// repeated endpoint; empty if none.
std::vector<NodeId> shortest_cycle_through(const Graph& h, NodeId node);

struct QIOptions {
  std::size_t exhaustive_limit = 3000;
  std::size_t sampled_pairs = 100000;
  std::uint64_t seed = 1;
  std::size_t max_reported = 20;
};

struct QIViolation {
  Vertex u = 0, v = 0;
  Distance d_g = 0, d_h = 0;
  std::string inequality;
};

struct QIReport {
  std::vector<NodeId> map;        // phi
  Distance R = 0;                 // measured maximum bag diameter
  std::uint64_t claimed_M = 1;    // R + 1
  double claimed_A = 0.0;         // R / (R + 1)
  Distance slack = 0;
  bool exhaustive = false;
  std::uint64_t pairs_checked = 0;
  double worst_expansion = 0.0;     // max d_H / d_G
  double worst_contraction = 0.0;   // max (d_G + 1) / (d_H + 1)
  bool surjective = true;
  std::uint64_t violation_count = 0;
  std::vector<QIViolation> violations;  // first few
  bool valid() const { return violation_count == 0 && surjective; }
};

QIReport quasi_isometry(const Graph& g, const LayeredPartition& lp, const QIOptions& options = {});
// Same check for an arbitrary vertex -> node map into h, with the first
// inequality relaxed to d_H <= d_G + slack (star leaves need slack 2).
QIReport check_embedding(const Graph& g, const Graph& h, const std::vector<NodeId>& phi, Distance R,
                         const QIOptions& options = {}, Distance slack = 0);

}  // namespace coarse_minor
