#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coarse_minor {

using Vertex = std::uint32_t;
using Distance = std::uint32_t;
inline constexpr Distance kInfinity = std::numeric_limits<Distance>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);

  static VertexSet from_unsorted(std::vector<Vertex> members);
  static VertexSet from_sorted(std::vector<Vertex> members);

  std::span<const Vertex> members() const { return members_; }
  const std::vector<Vertex>& vector() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  Vertex min() const { return members_.front(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  VertexSet unite(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;
  VertexSet intersect(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<Vertex> members_;
};

using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph in CSR form, neighbors sorted ascending.
class Graph {
 public:
  Graph() = default;
  // Duplicate edges are merged; self-loops and out-of-range ids throw.
  Graph(std::size_t vertex_count, std::span<const Edge> edges);
  Graph(std::size_t vertex_count, const std::vector<Edge>& edges)
      : Graph(vertex_count, std::span<const Edge>(edges)) {}

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v < vertex_count(); }
  void check_vertex(Vertex v) const;
  void check_set(const VertexSet& s) const;

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  // Subgraph induced by `keep` (sorted); vertex i of the result is keep[i].
  Graph induced(const VertexSet& keep) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<std::string> labels_;
};

// A family of disjoint classes; classes ordered by their minimum vertex.
struct NearComponentFamily {
  Distance k = 0;
  std::vector<VertexSet> classes;
};

struct ComponentInfo {
  VertexSet component;
  VertexSet boundary;     // members of the component adjacent to the removed set
  VertexSet attachments;  // removed vertices adjacent to the component
};

Distance distance_sets(const Graph& g, const VertexSet& u, const VertexSet& w);
// Like distance_sets but gives up beyond `limit` (returns kInfinity then).
Distance distance_sets_bounded(const Graph& g, const VertexSet& u, const VertexSet& w,
                               Distance limit);
Distance distance(const Graph& g, Vertex u, Vertex v);

VertexSet ball(const Graph& g, const VertexSet& u, Distance r);
NearComponentFamily near_components(const Graph& g, const VertexSet& u, Distance k);
std::vector<ComponentInfo> components_with_boundary(const Graph& g, const VertexSet& removed);

bool is_connected(const Graph& g);
bool is_connected_set(const Graph& g, const VertexSet& s);
// Largest pairwise distance in g between members of s, or kInfinity if it exceeds cap.
Distance set_diameter(const Graph& g, const VertexSet& s, Distance cap = kInfinity - 1);
// Shortest path from any member of `from` to `to` (ascending-id BFS tie-breaks).
std::vector<Vertex> shortest_path(const Graph& g, const VertexSet& from, Vertex to);

// Boundary of s: members with a neighbor outside s.
VertexSet boundary_of(const Graph& g, const VertexSet& s);
// Open neighborhood of s.
VertexSet neighborhood_of(const Graph& g, const VertexSet& s);

struct BlockDecomposition {
  std::vector<VertexSet> blocks;  // maximal 2-connected pieces and bridges
  VertexSet cut_vertices;
};
BlockDecomposition blocks_of(const Graph& g);
// At least three vertices, connected, no cut vertex.
bool is_two_connected(const Graph& g);

}  // namespace coarse_minor
