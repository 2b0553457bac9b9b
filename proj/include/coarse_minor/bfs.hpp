#pragma once

// Reusable BFS machinery. A workspace keeps generation-stamped marks so a
// small truncated BFS does not pay O(n) for clearing.

#include <coarse_minor/graph.hpp>

#include <span>
#include <vector>

namespace coarse_minor {

class BfsWorkspace {
 public:
  void prepare(std::size_t n) {
    if (stamp_.size() < n) {
      stamp_.resize(n, 0);
      dist_.resize(n, 0);
      parent_.resize(n, kNoVertex);
    }
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    order_.clear();
  }
  bool visited(Vertex v) const { return stamp_[v] == generation_; }
  Distance dist(Vertex v) const { return visited(v) ? dist_[v] : kInfinity; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  void visit(Vertex v, Distance d, Vertex parent) {
    stamp_[v] = generation_;
    dist_[v] = d;
    parent_[v] = parent;
    order_.push_back(v);
  }
  const std::vector<Vertex>& order() const { return order_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<Distance> dist_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> order_;
  std::uint32_t generation_ = 0;
};

// One workspace per thread and nesting level; nested BFS calls take the next level.
class WorkspaceLease {
 public:
  WorkspaceLease();
  ~WorkspaceLease();
  WorkspaceLease(const WorkspaceLease&) = delete;
  WorkspaceLease& operator=(const WorkspaceLease&) = delete;
  BfsWorkspace& operator*() { return *ws_; }
  BfsWorkspace* operator->() { return ws_; }

 private:
  BfsWorkspace* ws_;
};

// Sparse membership marks with O(1) reset.
class Marker {
 public:
  void prepare(std::size_t n) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
  }
  void mark(Vertex v) { stamp_[v] = generation_; }
  bool marked(Vertex v) const { return stamp_[v] == generation_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

// Multi-source BFS restricted to vertices accepted by `allowed`, truncated at
// `radius`. Sources that are not allowed are skipped. Neighbors are scanned in
// ascending order, so parents are the smallest-id discoverers in the previous
// level. `stop(v, d)` returning true ends the search right after visiting v.
template <class Allowed, class Stop>
void bfs(const Graph& g, std::span<const Vertex> sources, Distance radius, Allowed&& allowed,
         BfsWorkspace& ws, Stop&& stop) {
  ws.prepare(g.vertex_count());
  for (Vertex s : sources) {
    if (ws.visited(s) || !allowed(s)) continue;
    ws.visit(s, 0, kNoVertex);
    if (stop(s, Distance{0})) return;
  }
  const auto& order = ws.order();
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex v = order[head];
    Distance d = ws.dist(v);
    if (d >= radius) continue;
    for (Vertex w : g.neighbors(v)) {
      if (ws.visited(w) || !allowed(w)) continue;
      ws.visit(w, d + 1, v);
      if (stop(w, d + 1)) return;
    }
  }
}

template <class Allowed>
void bfs(const Graph& g, std::span<const Vertex> sources, Distance radius, Allowed&& allowed,
         BfsWorkspace& ws) {
  bfs(g, sources, radius, allowed, ws, [](Vertex, Distance) { return false; });
}

inline constexpr auto kAllVertices = [](Vertex) { return true; };

// Follow BFS parents from v back to a source; result starts at v.
inline std::vector<Vertex> trace_to_source(const BfsWorkspace& ws, Vertex v) {
  std::vector<Vertex> path;
  for (Vertex x = v; x != kNoVertex; x = ws.parent(x)) path.push_back(x);
  return path;
}

// Minimal union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // The smaller root wins so representatives stay deterministic.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace coarse_minor
