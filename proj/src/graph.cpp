#include <coarse_minor/bfs.hpp>
#include <coarse_minor/graph.hpp>

#include <algorithm>
#include <memory>

namespace coarse_minor {

// ---- VertexSet ---------------------------------------------------------

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(from_unsorted(std::vector<Vertex>(members))) {}

VertexSet VertexSet::from_unsorted(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  VertexSet s;
  s.members_ = std::move(members);
  return s;
}

VertexSet VertexSet::from_sorted(std::vector<Vertex> members) {
  for (std::size_t i = 1; i < members.size(); ++i)
    if (members[i - 1] >= members[i]) throw GraphError("VertexSet::from_sorted: input not strictly ascending");
  VertexSet s;
  s.members_ = std::move(members);
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  VertexSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  VertexSet out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  VertexSet out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out.members_));
  return out;
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

// ---- Graph -------------------------------------------------------------

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count >= kNoVertex) throw GraphError("graph too large");
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count)
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside 0.." + std::to_string(vertex_count) + "-1");
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
  offsets_.assign(vertex_count + 1, 0);
  for (auto [u, v] : directed) ++offsets_[u + 1];
  for (std::size_t i = 0; i < vertex_count; ++i) offsets_[i + 1] += offsets_[i];
  targets_.reserve(directed.size());
  for (auto [u, v] : directed) targets_.push_back(v);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::check_vertex(Vertex v) const {
  if (v >= vertex_count())
    throw GraphError("vertex id " + std::to_string(v) + " out of range (graph has " +
                     std::to_string(vertex_count()) + " vertices)");
}

void Graph::check_set(const VertexSet& s) const {
  if (!s.empty()) check_vertex(s.members().back());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count())
    throw GraphError("label count does not match vertex count");
  labels_ = std::move(labels);
}

Graph Graph::induced(const VertexSet& keep) const {
  check_set(keep);
  std::vector<Vertex> index(vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep.members()[i]] = static_cast<Vertex>(i);
  std::vector<Edge> sub;
  for (Vertex u : keep)
    for (Vertex v : neighbors(u))
      if (u < v && index[v] != kNoVertex) sub.emplace_back(index[u], index[v]);
  return Graph(keep.size(), sub);
}

// ---- workspaces --------------------------------------------------------

namespace {
struct WorkspacePool {
  std::vector<std::unique_ptr<BfsWorkspace>> levels;
  std::size_t depth = 0;
};
thread_local WorkspacePool pool;
}  // namespace

WorkspaceLease::WorkspaceLease() {
  if (pool.depth == pool.levels.size()) pool.levels.push_back(std::make_unique<BfsWorkspace>());
  ws_ = pool.levels[pool.depth++].get();
}

WorkspaceLease::~WorkspaceLease() { --pool.depth; }

// ---- metric primitives -------------------------------------------------

Distance distance_sets_bounded(const Graph& g, const VertexSet& u, const VertexSet& w,
                               Distance limit) {
  g.check_set(u);
  g.check_set(w);
  if (u.empty() || w.empty()) return kInfinity;
  if (u.intersects(w)) return 0;
  // Search from the smaller side.
  const VertexSet& from = u.size() <= w.size() ? u : w;
  const VertexSet& to = u.size() <= w.size() ? w : u;
  thread_local Marker target;
  target.prepare(g.vertex_count());
  for (Vertex v : to) target.mark(v);
  WorkspaceLease ws;
  Distance found = kInfinity;
  bfs(g, from.members(), limit, kAllVertices, *ws, [&](Vertex v, Distance d) {
    if (target.marked(v)) {
      found = d;
      return true;
    }
    return false;
  });
  return found;
}

Distance distance_sets(const Graph& g, const VertexSet& u, const VertexSet& w) {
  return distance_sets_bounded(g, u, w, kInfinity - 1);
}

Distance distance(const Graph& g, Vertex u, Vertex v) {
  return distance_sets(g, VertexSet{u}, VertexSet{v});
}

VertexSet ball(const Graph& g, const VertexSet& u, Distance r) {
  g.check_set(u);
  WorkspaceLease ws;
  bfs(g, u.members(), r, kAllVertices, *ws);
  return VertexSet::from_unsorted(ws->order());
}

NearComponentFamily near_components(const Graph& g, const VertexSet& u, Distance k) {
  g.check_set(u);
  NearComponentFamily fam;
  fam.k = k;
  if (u.empty()) return fam;
  std::vector<Vertex> index(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < u.size(); ++i) index[u.members()[i]] = static_cast<Vertex>(i);
  DisjointSets dsu(u.size());
  WorkspaceLease ws;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Vertex src = u.members()[i];
    bfs(g, std::span<const Vertex>(&src, 1), k, kAllVertices, *ws);
    for (Vertex v : ws->order())
      if (index[v] != kNoVertex) dsu.unite(static_cast<std::uint32_t>(i), index[v]);
  }
  std::vector<std::vector<Vertex>> groups(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) groups[dsu.find(static_cast<std::uint32_t>(i))].push_back(u.members()[i]);
  // Roots are the smallest index in each class, so this order is by minimum vertex.
  for (auto& grp : groups)
    if (!grp.empty()) fam.classes.push_back(VertexSet::from_sorted(std::move(grp)));
  return fam;
}

std::vector<ComponentInfo> components_with_boundary(const Graph& g, const VertexSet& removed) {
  g.check_set(removed);
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> gone(n, 0);
  for (Vertex v : removed) gone[v] = 1;
  std::vector<ComponentInfo> out;
  WorkspaceLease ws;
  std::vector<std::uint8_t> seen(n, 0);
  auto allowed = [&](Vertex v) { return !gone[v]; };
  for (Vertex s = 0; s < n; ++s) {
    if (gone[s] || seen[s]) continue;
    bfs(g, std::span<const Vertex>(&s, 1), kInfinity - 1, allowed, *ws);
    std::vector<Vertex> comp = ws->order();
    std::vector<Vertex> bnd, att;
    for (Vertex v : comp) {
      seen[v] = 1;
      bool on_boundary = false;
      for (Vertex w : g.neighbors(v))
        if (gone[w]) {
          on_boundary = true;
          att.push_back(w);
        }
      if (on_boundary) bnd.push_back(v);
    }
    ComponentInfo info;
    info.component = VertexSet::from_unsorted(std::move(comp));
    info.boundary = VertexSet::from_unsorted(std::move(bnd));
    info.attachments = VertexSet::from_unsorted(std::move(att));
    out.push_back(std::move(info));
  }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  WorkspaceLease ws;
  Vertex s = 0;
  bfs(g, std::span<const Vertex>(&s, 1), kInfinity - 1, kAllVertices, *ws);
  return ws->order().size() == g.vertex_count();
}

bool is_connected_set(const Graph& g, const VertexSet& s) {
  g.check_set(s);
  if (s.empty()) return false;
  thread_local Marker inside;
  inside.prepare(g.vertex_count());
  for (Vertex v : s) inside.mark(v);
  WorkspaceLease ws;
  Vertex src = s.min();
  bfs(g, std::span<const Vertex>(&src, 1), kInfinity - 1,
      [&](Vertex v) { return inside.marked(v); }, *ws);
  return ws->order().size() == s.size();
}

Distance set_diameter(const Graph& g, const VertexSet& s, Distance cap) {
  g.check_set(s);
  if (s.empty()) return 0;
  Marker inside;
  inside.prepare(g.vertex_count());
  for (Vertex v : s) inside.mark(v);
  Distance best = 0;
  WorkspaceLease ws;
  for (Vertex src : s) {
    std::size_t found = 0;
    Distance far = 0;
    bfs(g, std::span<const Vertex>(&src, 1), cap, kAllVertices, *ws, [&](Vertex v, Distance d) {
      if (inside.marked(v)) {
        ++found;
        far = d;
      }
      return found == s.size();
    });
    if (found < s.size()) return kInfinity;
    best = std::max(best, far);
  }
  return best;
}

std::vector<Vertex> shortest_path(const Graph& g, const VertexSet& from, Vertex to) {
  g.check_set(from);
  g.check_vertex(to);
  WorkspaceLease ws;
  bool reached = false;
  bfs(g, from.members(), kInfinity - 1, kAllVertices, *ws, [&](Vertex v, Distance) {
    reached = v == to;
    return reached;
  });
  if (!reached) return {};
  auto path = trace_to_source(*ws, to);
  std::reverse(path.begin(), path.end());
  return path;
}

VertexSet boundary_of(const Graph& g, const VertexSet& s) {
  g.check_set(s);
  std::vector<Vertex> out;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!s.contains(w)) {
        out.push_back(v);
        break;
      }
  return VertexSet::from_sorted(std::move(out));
}

VertexSet neighborhood_of(const Graph& g, const VertexSet& s) {
  g.check_set(s);
  std::vector<Vertex> out;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!s.contains(w)) out.push_back(w);
  return VertexSet::from_unsorted(std::move(out));
}

// Iterative Hopcroft-Tarjan.
BlockDecomposition blocks_of(const Graph& g) {
  const std::size_t n = g.vertex_count();
  BlockDecomposition out;
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<std::uint8_t> is_cut(n, 0);
  std::vector<Edge> edge_stack;
  std::uint32_t timer = 0;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
    std::uint32_t children;
  };
  std::vector<Frame> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root]) continue;
    if (g.degree(root) == 0) {
      out.blocks.push_back(VertexSet{root});
      continue;
    }
    disc[root] = low[root] = ++timer;
    stack.push_back({root, kNoVertex, 0, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        Vertex w = nb[f.next++];
        if (w == f.parent) continue;
        if (!disc[w]) {
          edge_stack.emplace_back(f.v, w);
          ++f.children;
          disc[w] = low[w] = ++timer;
          stack.push_back({w, f.v, 0, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children >= 2) is_cut[done.v] = 1;
        continue;
      }
      Vertex p = stack.back().v;
      low[p] = std::min(low[p], low[done.v]);
      if (low[done.v] >= disc[p]) {
        if (stack.size() > 1) is_cut[p] = 1;
        std::vector<Vertex> block;
        while (!edge_stack.empty()) {
          Edge e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e.first);
          block.push_back(e.second);
          if (e.first == p && e.second == done.v) break;
        }
        out.blocks.push_back(VertexSet::from_unsorted(std::move(block)));
      }
    }
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const VertexSet& a, const VertexSet& b) {
              return a.min() != b.min() ? a.min() < b.min() : a < b;
            });
  std::vector<Vertex> cuts;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[v]) cuts.push_back(v);
  out.cut_vertices = VertexSet::from_sorted(std::move(cuts));
  return out;
}

bool is_two_connected(const Graph& g) {
  if (g.vertex_count() < 3 || !is_connected(g)) return false;
  return blocks_of(g).cut_vertices.empty();
}

}  // namespace coarse_minor
