#include <coarse_minor/bfs.hpp>
#include <coarse_minor/generators.hpp>
#include <coarse_minor/partition.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace coarse_minor {

namespace {

constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Heights of the vertices of bag h: distance from its attachment inside G - G^{i_h - 1}.
std::map<Vertex, Distance> bag_heights(const Graph& g, const LayeredPartition& lp, NodeId h) {
  const Bag& b = lp.bags[h];
  WorkspaceLease ws;
  if (h == lp.root)
    bfs(g, b.attachment.members(), b.height, kAllVertices, *ws);
  else
    bfs(g, b.attachment.members(), b.height,
        [&](Vertex v) { return lp.bags[lp.node_of[v]].layer >= b.layer; }, *ws);
  std::map<Vertex, Distance> out;
  for (Vertex v : ws->order()) out[v] = ws->dist(v);
  return out;
}

}  // namespace

FatModel extract_fat_model(const Graph& g, const LayeredPartition& lp, const ConstantsProfile& profile,
                           const std::vector<std::pair<NodeId, NodeId>>& j_edges, const PartitionReport* verified) {
  PartitionReport own;
  if (verified == nullptr) {
    own = verify_partition(g, lp, profile);
    verified = &own;
  }
  if (!verified->valid)
    throw PartitionError("partition does not satisfy the extraction hypotheses: " +
                         verified->violations.front().check + ": " + verified->violations.front().detail);
  if (lp.node_of.size() != g.vertex_count()) throw PartitionError("partition has no vertex map");

  std::set<std::pair<NodeId, NodeId>> h_edges(lp.h_edges.begin(), lp.h_edges.end());
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<NodeId> nodes;
  for (auto [a, b] : j_edges) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (!h_edges.count(key))
      throw PartitionError("J edge " + std::to_string(a) + "-" + std::to_string(b) + " is not an edge of H");
    if (!seen.insert(key).second) throw PartitionError("J repeats an edge");
    nodes.push_back(a);
    nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::map<NodeId, std::uint32_t> index;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  {
    std::vector<Edge> local;
    for (auto [a, b] : j_edges) local.emplace_back(index[a], index[b]);
    if (!is_two_connected(Graph(nodes.size(), local))) throw PartitionError("J is not 2-connected");
  }

  const Distance K = static_cast<Distance>(profile.k);
  const Distance ell = static_cast<Distance>(profile.L);
  std::map<NodeId, std::map<Vertex, Distance>> heights;
  for (NodeId x : nodes) heights[x] = bag_heights(g, lp, x);

  FatModel m;
  m.pattern.name = "J";
  m.pattern.vertex_count = static_cast<std::uint32_t>(nodes.size());
  m.claimed_fatness = K;
  std::vector<std::vector<Vertex>> tentacles(nodes.size());

  for (auto [a, b] : j_edges) {
    m.pattern.edges.emplace_back(index[a], index[b]);
    NodeId up = lp.bags[a].layer > lp.bags[b].layer ? a : b;
    NodeId low = up == a ? b : a;
    const Bag& bg = lp.bags[up];
    const Bag& bh = lp.bags[low];
    // Honest edge uv with u in the lower bag and v in the upper one.
    Vertex u = kNoVertex, v = kNoVertex;
    for (Vertex x : bh.vertices) {
      for (Vertex y : g.neighbors(x))
        if (lp.node_of[y] == up) {
          u = x;
          v = y;
          break;
        }
      if (u != kNoVertex) break;
    }
    if (u == kNoVertex) throw PartitionError("H edge without a realizing G edge");
    const auto& hh = heights[low];
    if (hh.at(u) != bh.height)
      throw PartitionError("vertex " + std::to_string(u) + " adjacent to an upper bag is not at full height");
    // Descent q_0 = v, q_1 = u, ..., q_{R_h + 1} in the attachment of the lower bag.
    std::vector<Vertex> q{v, u};
    for (Distance level = bh.height; level > 0; --level) {
      Vertex cur = q.back(), next = kNoVertex;
      for (Vertex w : g.neighbors(cur)) {
        auto it = hh.find(w);
        if (it != hh.end() && lp.node_of[w] == low && it->second == level - 1) {
          next = w;
          break;
        }
      }
      if (next == kNoVertex) throw PartitionError("descent path broke off inside bag " + std::to_string(low));
      q.push_back(next);
    }
    const std::size_t rg = bg.depth;
    if (rg + K >= q.size() || ell + K + 1 >= q.size())
      throw PartitionError("bag " + std::to_string(low) + " is too shallow for the buffer zone");
    std::vector<Vertex> path(q.begin() + static_cast<std::ptrdiff_t>(rg),
                             q.begin() + static_cast<std::ptrdiff_t>(rg + K + 1));
    if (up != a) std::reverse(path.begin(), path.end());
    m.branch_paths.push_back(std::move(path));
    auto& tent = tentacles[index[low]];
    tent.insert(tent.end(), q.begin() + static_cast<std::ptrdiff_t>(rg + K),
                q.begin() + static_cast<std::ptrdiff_t>(ell + K + 2));
  }

  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    NodeId x = nodes[i];
    const Bag& b = lp.bags[x];
    const auto& hx = heights[x];
    std::vector<Vertex> members = tentacles[i];
    const Distance top = b.height - ell - K;
    for (auto [vtx, h] : hx)
      if (h <= top) members.push_back(vtx);
    if (x != lp.root) {
      WorkspaceLease ws;
      bfs(g, b.attachment.members(), b.depth, kAllVertices, *ws);
      for (Vertex w : ws->order()) {
        auto it = hx.find(w);
        bool up = it != hx.end() && lp.node_of[w] == x && it->second <= b.depth;
        if (!up) members.push_back(w);
      }
    }
    m.branch_sets.push_back(VertexSet::from_unsorted(std::move(members)));
  }
  return m;
}

std::vector<NodeId> shortest_cycle_through(const Graph& h, NodeId s) {
  h.check_vertex(s);
  WorkspaceLease ws;
  bfs(h, std::span<const Vertex>(&s, 1), kInfinity - 1, kAllVertices, *ws);
  std::vector<NodeId> branch(h.vertex_count(), kNoNode);
  for (Vertex v : ws->order()) {
    if (v == s) continue;
    branch[v] = ws->parent(v) == s ? v : branch[ws->parent(v)];
  }
  Distance best = kInfinity;
  Edge pick{kNoVertex, kNoVertex};
  for (Vertex a : ws->order())
    for (Vertex b : h.neighbors(a)) {
      if (a >= b || !ws->visited(b)) continue;
      if (a == s || b == s) {
        Vertex other = a == s ? b : a;
        if (ws->parent(other) == s) continue;  // tree edge
        Distance len = ws->dist(other) + 1;
        if (len < best) {
          best = len;
          pick = {s, other};
        }
        continue;
      }
      if (branch[a] == branch[b]) continue;
      Distance len = ws->dist(a) + ws->dist(b) + 1;
      if (len < best) {
        best = len;
        pick = {a, b};
      }
    }
  if (best == kInfinity) return {};
  auto left = trace_to_source(*ws, pick.first);   // a ... s
  auto right = trace_to_source(*ws, pick.second); // b ... s
  std::reverse(left.begin(), left.end());         // s ... a
  right.pop_back();                               // b ... (child of s)
  if (pick.first == s) left = {s};
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

QIReport check_embedding(const Graph& g, const Graph& h, const std::vector<NodeId>& phi, Distance R,
                         const QIOptions& options, Distance slack) {
  const std::size_t n = g.vertex_count();
  if (phi.size() != n) throw PartitionError("map size does not match the graph");
  for (NodeId x : phi) h.check_vertex(x);
  QIReport rep;
  rep.map = phi;
  rep.R = R;
  rep.claimed_M = std::uint64_t{R} + 1;
  rep.claimed_A = static_cast<double>(R) / (static_cast<double>(R) + 1.0);
  rep.slack = slack;
  std::vector<std::uint8_t> hit(h.vertex_count(), 0);
  for (NodeId x : phi) hit[x] = 1;
  rep.surjective = std::all_of(hit.begin(), hit.end(), [](auto b) { return b != 0; });

  auto check_pair = [&](Vertex u, Vertex v, Distance dg, Distance dh) {
    ++rep.pairs_checked;
    if (u == v) return;
    if (dg != kInfinity && dg > 0) rep.worst_expansion = std::max(rep.worst_expansion, double(dh) / double(dg));
    if (dh != kInfinity)
      rep.worst_contraction = std::max(rep.worst_contraction, (double(dg) + 1.0) / (double(dh) + 1.0));
    auto report = [&](const char* which) {
      ++rep.violation_count;
      if (rep.violations.size() < options.max_reported) rep.violations.push_back({u, v, dg, dh, which});
    };
    if (dh != kInfinity && std::uint64_t{dh} > std::uint64_t{dg} + slack)
      report(slack ? "d_H <= d_G + slack" : "d_H <= d_G");
    if (dh != kInfinity && std::uint64_t{dg} > (std::uint64_t{R} + 1) * dh + R) report("d_G <= (R+1) d_H + R");
    if (dh == kInfinity && dg != kInfinity) report("d_G <= (R+1) d_H + R");
  };

  WorkspaceLease wg, wh;
  auto run_source = [&](Vertex u, const std::vector<Vertex>* targets) {
    bfs(g, std::span<const Vertex>(&u, 1), kInfinity - 1, kAllVertices, *wg);
    NodeId hu = phi[u];
    bfs(h, std::span<const Vertex>(&hu, 1), kInfinity - 1, kAllVertices, *wh);
    if (targets == nullptr) {
      for (Vertex v = u + 1; v < n; ++v) check_pair(u, v, wg->dist(v), wh->dist(phi[v]));
    } else {
      for (Vertex v : *targets) check_pair(u, v, wg->dist(v), wh->dist(phi[v]));
    }
  };

  if (n <= options.exhaustive_limit) {
    rep.exhaustive = true;
    for (Vertex u = 0; u < n; ++u) run_source(u, nullptr);
  } else {
    Rng rng(options.seed);
    const std::size_t per_source = 1000;
    const std::size_t sources = std::max<std::size_t>(1, (options.sampled_pairs + per_source - 1) / per_source);
    std::vector<Vertex> targets(per_source);
    for (std::size_t s = 0; s < sources; ++s) {
      Vertex u = static_cast<Vertex>(rng.below(n));
      for (auto& t : targets) t = static_cast<Vertex>(rng.below(n));
      run_source(u, &targets);
    }
  }
  return rep;
}

QIReport quasi_isometry(const Graph& g, const LayeredPartition& lp, const QIOptions& options) {
  if (lp.vertex_count != g.vertex_count()) throw PartitionError("partition does not match the graph");
  LayeredPartition local = lp;
  if (local.node_of.size() != g.vertex_count()) local.rebuild_node_of();
  for (NodeId x : local.node_of)
    if (x == kNoNode) throw PartitionError("partition leaves a vertex uncovered");
  Distance R = 0;
  for (const auto& b : local.bags) {
    if (b.vertices.empty()) throw PartitionError("partition has an empty bag");
    Distance d = set_diameter(g, b.vertices);
    if (d == kInfinity) throw PartitionError("bag " + std::to_string(b.id) + " is disconnected in G");
    R = std::max(R, d);
  }
  return check_embedding(g, local.quotient(), local.node_of, R, options);
}

}  // namespace coarse_minor
