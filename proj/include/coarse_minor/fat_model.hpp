#pragma once

#include <coarse_minor/graph.hpp>

#include <string>
#include <vector>

namespace coarse_minor {

// Small loopless multigraph used as a minor pattern.
struct PatternGraph {
  std::string name;
  std::uint32_t vertex_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  // Two vertices joined by t parallel edges.
  static PatternGraph theta(std::uint32_t t);
  // Hubs 0 and 1, leaves 2..t+1; edges ordered (0,2),(2,1),(0,3),(3,1),...
  // which is exactly subdivided(theta(t)).
  static PatternGraph k2t(std::uint32_t t);
  static PatternGraph cycle(std::uint32_t n);
  // Every edge e = xy replaced by x - w_e - y, w_e = vertex_count + index(e).
  static PatternGraph subdivided(const PatternGraph& j);

  void validate() const;
  std::uint32_t multiplicity(std::uint32_t x, std::uint32_t y) const;
  friend bool operator==(const PatternGraph& a, const PatternGraph& b) {
    return a.vertex_count == b.vertex_count && a.edges == b.edges;
  }
};

struct FatModel {
  PatternGraph pattern;
  std::vector<VertexSet> branch_sets;               // indexed by pattern vertex
  std::vector<std::vector<Vertex>> branch_paths;    // indexed by pattern edge, from U_x to U_y
  Distance claimed_fatness = 0;
};

struct ModelObject {
  enum class Kind { BranchSet, BranchPath };
  Kind kind = Kind::BranchSet;
  std::uint32_t index = 0;
  friend auto operator<=>(const ModelObject&, const ModelObject&) = default;
};

std::string describe(const ModelObject& o);

struct Violation {
  enum class Kind { Structure, Distance };
  Kind kind = Kind::Structure;
  ModelObject first;
  ModelObject second;
  Distance required = 0;
  Distance actual = 0;
  std::string detail;
};

struct FatnessReport {
  bool valid = true;
  std::vector<Violation> violations;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural checks plus every non-incident pairwise distance >= k.
FatnessReport verify_fat_model(const Graph& g, const FatModel& m, Distance k);

// Turns a 3k-fat model of J into a k-fat model of J subdivided once.
FatModel subdivide_model(const Graph& g, const FatModel& m, Distance k);

}  // namespace coarse_minor
