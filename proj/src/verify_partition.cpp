#include <coarse_minor/bfs.hpp>
#include <coarse_minor/partition.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>

namespace coarse_minor {

namespace {

constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Checker {
  const Graph& g;
  const LayeredPartition& lp;
  const ConstantsProfile& p;
  PartitionReport rep;
  std::vector<NodeId> node_of;
  std::vector<Distance> height;  // recomputed heights within each bag

  void fail(const std::string& check, const std::string& detail) {
    rep.violations.push_back({check, detail});
  }
  std::string bag_name(NodeId h) const { return "bag " + std::to_string(h); }

  bool partition_ok() {
    const std::size_t n = g.vertex_count();
    if (lp.vertex_count != n) {
      fail("partition", "partition covers " + std::to_string(lp.vertex_count) + " vertices, graph has " + std::to_string(n));
      return false;
    }
    if (lp.bags.empty()) {
      fail("partition", "no bags");
      return false;
    }
    node_of.assign(n, kNoNode);
    bool ok = true;
    for (NodeId h = 0; h < lp.bags.size(); ++h) {
      const Bag& b = lp.bags[h];
      if (b.id != h) {
        fail("partition", bag_name(h) + " has id " + std::to_string(b.id));
        ok = false;
      }
      if (b.vertices.empty()) {
        fail("honesty", bag_name(h) + " is empty");
        ok = false;
      }
      for (Vertex v : b.vertices) {
        if (v >= n) {
          fail("partition", bag_name(h) + " contains out-of-range vertex " + std::to_string(v));
          return false;
        }
        if (node_of[v] != kNoNode) {
          fail("partition", "vertex " + std::to_string(v) + " lies in bags " + std::to_string(node_of[v]) + " and " +
                                std::to_string(h));
          ok = false;
        }
        node_of[v] = h;
      }
    }
    for (Vertex v = 0; v < n; ++v)
      if (node_of[v] == kNoNode) {
        fail("partition", "vertex " + std::to_string(v) + " lies in no bag");
        ok = false;
        break;
      }
    if (lp.root >= lp.bags.size()) {
      fail("partition", "root out of range");
      ok = false;
    }
    return ok;
  }

  void honesty() {
    std::set<std::pair<NodeId, NodeId>> realized, declared;
    for (auto [u, v] : g.edges()) {
      NodeId a = node_of[u], b = node_of[v];
      if (a != b) realized.emplace(std::min(a, b), std::max(a, b));
    }
    for (auto [a, b] : lp.h_edges) {
      if (a >= lp.bags.size() || b >= lp.bags.size() || a == b) {
        fail("honesty", "malformed H edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        continue;
      }
      declared.emplace(std::min(a, b), std::max(a, b));
    }
    for (auto e : declared)
      if (!realized.count(e))
        fail("honesty", "H edge " + std::to_string(e.first) + "-" + std::to_string(e.second) + " is not realized by a G edge");
    for (auto e : realized)
      if (!declared.count(e))
        fail("graph-partition", "G edge joins bags " + std::to_string(e.first) + " and " + std::to_string(e.second) +
                                    " which are not adjacent in H");
  }

  void layers(const Graph& h) {
    WorkspaceLease ws;
    NodeId r = lp.root;
    bfs(h, std::span<const Vertex>(&r, 1), kInfinity - 1, kAllVertices, *ws);
    for (NodeId x = 0; x < lp.bags.size(); ++x) {
      if (ws->dist(x) != lp.bags[x].layer)
        fail("layers", bag_name(x) + " has layer " + std::to_string(lp.bags[x].layer) + " but H-distance " +
                           (ws->dist(x) == kInfinity ? std::string("inf") : std::to_string(ws->dist(x))) + " from the root");
    }
    for (auto [a, b] : lp.h_edges)
      if (a < lp.bags.size() && b < lp.bags.size() && lp.bags[a].layer == lp.bags[b].layer)
        fail("layers", "bags " + std::to_string(a) + " and " + std::to_string(b) + " share a layer and are adjacent");
  }

  // Levelness (ii); also fills `height`.
  void levelness() {
    height.assign(g.vertex_count(), kInfinity);
    WorkspaceLease ws;
    for (NodeId h = 0; h < lp.bags.size(); ++h) {
      const Bag& b = lp.bags[h];
      std::vector<Vertex> ball_v;
      if (h == lp.root) {
        if (b.attachment.size() != 1 || !b.vertices.contains(b.attachment.min())) {
          fail("levelness", "root attachment must be a single vertex of the root bag");
          continue;
        }
        bfs(g, b.attachment.members(), b.height, kAllVertices, *ws);
      } else {
        std::vector<Vertex> bottom;
        for (Vertex v : b.vertices)
          for (Vertex w : g.neighbors(v))
            if (lp.bags[node_of[w]].layer < b.layer) {
              bottom.push_back(v);
              break;
            }
        if (!(VertexSet::from_sorted(bottom) == b.attachment)) {
          fail("levelness", bag_name(h) + " stores an attachment set that differs from its vertices adjacent to lower layers");
          continue;
        }
        if (bottom.empty()) {
          fail("levelness", bag_name(h) + " has no vertex adjacent to a lower layer");
          continue;
        }
        bfs(g, b.attachment.members(), b.height, [&](Vertex v) { return lp.bags[node_of[v]].layer >= b.layer; }, *ws);
      }
      if (!(VertexSet::from_unsorted(ws->order()) == b.vertices)) {
        fail("levelness", bag_name(h) + " is not the ball of radius " + std::to_string(b.height) + " around its attachment");
        continue;
      }
      for (Vertex v : ws->order()) height[v] = ws->dist(v);
    }
  }

  void ranges() {
    const Distance K = static_cast<Distance>(p.k), ell = static_cast<Distance>(p.L);
    const std::uint64_t Lp = p.L_prime;
    for (NodeId h = 0; h < lp.bags.size(); ++h) {
      const Bag& b = lp.bags[h];
      if (b.height < std::uint64_t{ell} + K)
        fail("heights", bag_name(h) + " has height " + std::to_string(b.height) + " < L + K = " + std::to_string(ell + K));
      if (b.height > Lp)
        fail("heights", bag_name(h) + " has height " + std::to_string(b.height) + " > L' = " + std::to_string(Lp));
      if (h == lp.root) {
        if (b.depth != 0) fail("depths", "root depth must be 0");
        continue;
      }
      if (b.height < 2 * std::uint64_t{ell} + 3 * K)
        fail("heights", bag_name(h) + " has height " + std::to_string(b.height) + " < 2L + 3K");
      if (b.depth == 0 || b.depth > ell)
        fail("depths", bag_name(h) + " has depth " + std::to_string(b.depth) + " outside (0, L]");
    }
  }

  VertexSet up_set(NodeId h, Distance r) const {
    std::vector<Vertex> out;
    for (Vertex v : lp.bags[h].vertices)
      if (height[v] <= r) out.push_back(v);
    return VertexSet::from_sorted(std::move(out));
  }

  VertexSet down_set(NodeId h, Distance r) const {
    WorkspaceLease ws;
    bfs(g, lp.bags[h].attachment.members(), r, kAllVertices, *ws);
    std::vector<Vertex> out;
    for (Vertex v : ws->order())
      if (!(node_of[v] == h && height[v] <= r)) out.push_back(v);
    return VertexSet::from_unsorted(std::move(out));
  }

  void connectivity() {
    const Distance K = static_cast<Distance>(p.k), ell = static_cast<Distance>(p.L);
    for (NodeId h = 0; h < lp.bags.size(); ++h) {
      const Bag& b = lp.bags[h];
      if (b.height < ell + K) continue;  // already reported
      VertexSet s = up_set(h, b.height - ell - K).unite(down_set(h, b.depth));
      if (!is_connected_set(g, s))
        fail("connectivity", bag_name(h) + ": upper core plus undergrowth is not connected");
    }
  }

  bool g_separates(NodeId x, NodeId a, NodeId b) const {
    WorkspaceLease ws;
    bool reached = false;
    bfs(g, lp.bags[a].vertices.members(), kInfinity - 1, [&](Vertex v) { return node_of[v] != x; }, *ws,
        [&](Vertex v, Distance) { return reached = node_of[v] == b; });
    return !reached;
  }

  void separation(const Graph& h) {
    const Distance K = static_cast<Distance>(p.k);
    Distance rmax = 0;
    for (const auto& b : lp.bags) rmax = std::max(rmax, b.depth);
    const Distance radius = 2 * rmax + 3 * K - 1;
    std::set<std::pair<NodeId, NodeId>> adjacent(lp.h_edges.begin(), lp.h_edges.end());
    auto blocks = blocks_of(h);
    std::vector<std::vector<std::uint32_t>> block_ids(lp.bags.size());
    for (std::uint32_t i = 0; i < blocks.blocks.size(); ++i)
      for (Vertex x : blocks.blocks[i]) block_ids[x].push_back(i);
    auto share_block = [&](NodeId a, NodeId b) {
      for (auto i : block_ids[a])
        if (std::binary_search(block_ids[b].begin(), block_ids[b].end(), i)) return true;
      return false;
    };

    WorkspaceLease ws;
    for (NodeId a = 0; a < lp.bags.size(); ++a) {
      bfs(g, lp.bags[a].vertices.members(), radius, kAllVertices, *ws);
      std::unordered_map<NodeId, Distance> close;
      for (Vertex v : ws->order()) {
        NodeId b = node_of[v];
        if (b <= a || adjacent.count({a, b})) continue;
        auto it = close.find(b);
        if (it == close.end() || ws->dist(v) < it->second) close[b] = ws->dist(v);
      }
      std::vector<std::pair<NodeId, Distance>> sorted(close.begin(), close.end());
      std::sort(sorted.begin(), sorted.end());
      for (auto [b, d] : sorted) {
        const Distance need = 2 * std::max(lp.bags[a].depth, lp.bags[b].depth) + 3 * K;
        if (d >= need) continue;
        if (!share_block(a, b)) {
          ++rep.close_pairs_separated;
          continue;
        }
        bool found = false;
        for (NodeId x = 0; x < lp.bags.size() && !found; ++x)
          if (x != a && x != b && g_separates(x, a, b)) found = true;
        if (found) {
          ++rep.close_pairs_separated;
          continue;
        }
        fail("separation", "bags " + std::to_string(a) + " and " + std::to_string(b) + " are at distance " +
                               std::to_string(d) + " < " + std::to_string(need) + " and no bag separates them");
      }
    }
  }

  // Every component of G - G^{n-1} meets at most t-1 bags of layer n.
  void contacts() {
    const std::size_t n = g.vertex_count();
    std::uint32_t layers = lp.layer_count();
    std::vector<std::vector<NodeId>> by_layer(layers);
    for (NodeId h = 0; h < lp.bags.size(); ++h) by_layer[lp.bags[h].layer].push_back(h);
    DisjointSets dsu(n);
    std::vector<std::uint8_t> active(n, 0);
    for (std::uint32_t i = layers; i-- > 0;) {
      for (NodeId h : by_layer[i])
        for (Vertex v : lp.bags[h].vertices) active[v] = 1;
      for (NodeId h : by_layer[i])
        for (Vertex v : lp.bags[h].vertices)
          for (Vertex w : g.neighbors(v))
            if (active[w]) dsu.unite(v, w);
      std::unordered_map<std::uint32_t, std::vector<NodeId>> met;
      for (NodeId h : by_layer[i])
        for (Vertex v : lp.bags[h].vertices) {
          auto& list = met[dsu.find(v)];
          if (list.empty() || list.back() != h) list.push_back(h);
        }
      for (auto& [root, list] : met) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        if (list.size() > p.t - 1)
          fail("contacts", "a component of G - G^" + std::to_string(static_cast<int>(i) - 1) + " meets " +
                               std::to_string(list.size()) + " bags of layer " + std::to_string(i));
      }
    }
  }

  void diameters() {
    const Distance cap = static_cast<Distance>(std::min<std::uint64_t>(p.R, kInfinity - 2));
    for (NodeId h = 0; h < lp.bags.size(); ++h) {
      Distance d = set_diameter(g, lp.bags[h].vertices, cap);
      if (d == kInfinity)
        fail("diameter", bag_name(h) + " has diameter above R = " + std::to_string(p.R));
      else
        rep.max_bag_diameter = std::max(rep.max_bag_diameter, d);
    }
  }
};

}  // namespace

PartitionReport verify_partition(const Graph& g, const LayeredPartition& lp, const ConstantsProfile& profile) {
  Checker c{g, lp, profile, {}, {}, {}};
  if (c.partition_ok()) {
    Graph h;
    try {
      h = lp.quotient();
    } catch (const GraphError& e) {
      c.fail("honesty", std::string("malformed H edges: ") + e.what());
      c.rep.valid = false;
      return c.rep;
    }
    c.honesty();
    c.layers(h);
    c.levelness();
    c.ranges();
    bool level_ok = std::none_of(c.rep.violations.begin(), c.rep.violations.end(),
                                 [](const PartitionCheck& v) { return v.check == "levelness" || v.check == "layers"; });
    if (level_ok) {
      c.connectivity();
      c.contacts();
    }
    c.separation(h);
    c.diameters();
  }
  c.rep.valid = c.rep.violations.empty();
  return c.rep;
}

}  // namespace coarse_minor
