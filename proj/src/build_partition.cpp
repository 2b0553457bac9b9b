#include <coarse_minor/bfs.hpp>
#include <coarse_minor/partition.hpp>
#include <coarse_minor/theta_finder.hpp>

#include <algorithm>
#include <map>

namespace coarse_minor {

namespace {

constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

Distance narrow(std::uint64_t x, const char* what) {
  if (x >= kInfinity / 4) throw PartitionError(std::string(what) + " is too large for this build");
  return static_cast<Distance>(x);
}

struct StepComponent {
  VertexSet vertices;
  VertexSet boundary;
  std::vector<NodeId> touched;  // nodes of the newest layer adjacent to the component
  std::uint32_t z = 0;          // component of G - G^{n-1} containing it
  NearComponentFamily near;
};

class Builder {
 public:
  Builder(const Graph& g, const ConstantsProfile& p, const BuildOptions& o)
      : g_(g), p_(p), opts_(o), n_(g.vertex_count()) {
    K_ = narrow(p.k, "K");
    ell_ = narrow(p.L, "L");
    Lp_ = narrow(p.L_prime, "L'");
    R0_ = p.R0;
  }

  BuildOutcome run();

 private:
  bool assigned(Vertex v) const { return node_of_[v] != kNoNode; }
  std::uint32_t layer_of(Vertex v) const { return bags_[node_of_[v]].layer; }

  VertexSet component_x();
  VertexSet x_for_node(NodeId h);
  std::optional<BuildOutcome> audit_component(const StepComponent& c);
  void add_bag(VertexSet vertices, VertexSet attachment, Distance height, Distance depth, std::uint32_t layer,
               const std::vector<std::pair<Vertex, Distance>>& heights);
  BuildOutcome witness_outcome(AuditOutcome a);

  const Graph& g_;
  ConstantsProfile p_;
  BuildOptions opts_;
  std::size_t n_;
  Distance K_ = 0, ell_ = 0, Lp_ = 0;
  std::uint64_t R0_ = 0;
  Vertex origin_ = 0;

  std::vector<NodeId> node_of_;
  std::vector<Distance> height_;  // distance from the bag's attachment inside G - G^{i-1}
  std::vector<Bag> bags_;
  std::vector<std::vector<NodeId>> layers_;
  std::vector<MergeRecord> merges_;
  std::uint32_t steps_ = 0;
};

void Builder::add_bag(VertexSet vertices, VertexSet attachment, Distance height, Distance depth,
                      std::uint32_t layer, const std::vector<std::pair<Vertex, Distance>>& heights) {
  Bag b;
  b.id = static_cast<NodeId>(bags_.size());
  b.layer = layer;
  b.height = height;
  b.depth = depth;
  b.attachment = std::move(attachment);
  b.vertices = std::move(vertices);
  for (auto [v, h] : heights) {
    if (assigned(v))
      throw PartitionError("bags overlap at vertex " + std::to_string(v) + " in layer " + std::to_string(layer));
    node_of_[v] = b.id;
    height_[v] = h;
  }
  if (layers_.size() <= layer) layers_.resize(layer + 1);
  layers_[layer].push_back(b.id);
  bags_.push_back(std::move(b));
}

BuildOutcome Builder::witness_outcome(AuditOutcome a) {
  BuildOutcome out;
  out.kind = BuildOutcome::Kind::Witness;
  out.profile = p_;
  out.witness = std::move(a.witness);
  out.witness_rule = a.rule;
  out.steps = steps_;
  out.merges = std::move(merges_);
  return out;
}

// The component of G^n - B(G - G^n, K-1) containing o.
VertexSet Builder::component_x() {
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < n_; ++v)
    if (!assigned(v)) outside.push_back(v);
  WorkspaceLease near;
  bfs(g_, outside, K_ - 1, kAllVertices, *near);
  Marker blocked;
  blocked.prepare(n_);
  for (Vertex v : near->order()) blocked.mark(v);
  if (blocked.marked(origin_)) throw PartitionError("origin lies within K-1 of the unassigned region");
  WorkspaceLease ws;
  bfs(g_, std::span<const Vertex>(&origin_, 1), kInfinity - 1,
      [&](Vertex v) { return assigned(v) && !blocked.marked(v); }, *ws);
  return VertexSet::from_unsorted(ws->order());
}

// dU_h(R_h - K - 1) together with dD_h(r_h).
VertexSet Builder::x_for_node(NodeId h) {
  const Bag& b = bags_[h];
  if (b.height < K_ + 1) throw PartitionError("bag height below K+1");
  const Distance up = b.height - K_ - 1;
  std::vector<Vertex> out;
  for (Vertex v : b.vertices)
    if (height_[v] <= up) out.push_back(v);
  WorkspaceLease ws;
  bfs(g_, b.attachment.members(), b.depth, kAllVertices, *ws);
  for (Vertex v : ws->order()) {
    bool in_up = node_of_[v] == h && height_[v] <= b.depth;
    if (!in_up) out.push_back(v);
  }
  return VertexSet::from_unsorted(std::move(out));
}

std::optional<BuildOutcome> Builder::audit_component(const StepComponent& c) {
  const std::uint32_t t = p_.t;
  bool fires = c.near.classes.size() >= t;
  const Distance limit = 6 * K_ * (t - 1);
  for (std::size_t i = 0; !fires && i < c.near.classes.size(); ++i)
    fires = set_diameter(g_, c.near.classes[i], limit - 1) == kInfinity;
  if (!fires) return std::nullopt;
  auto outcome = audit_boundary(g_, component_x(), K_, c.vertices, t);
  if (!outcome.is_witness())
    throw PartitionError("boundary audit disagrees with the builder's own measurement");
  return witness_outcome(std::move(outcome));
}

BuildOutcome Builder::run() {
  if (p_.t < 3) throw PartitionError("t must be at least 3");
  if (n_ == 0) throw PartitionError("graph is empty");
  if (!is_connected(g_)) throw PartitionError("graph is disconnected; partition each component separately");
  if (p_.mode == ProfileMode::Scaled && !p_.hypotheses_enforceable)
    throw PartitionError("scaled profile cannot meet the bag height/depth ranges (need L' >= 2L + 3K)");
  origin_ = opts_.root.value_or(0);
  g_.check_vertex(origin_);
  node_of_.assign(n_, kNoNode);
  height_.assign(n_, 0);

  {
    WorkspaceLease ws;
    bfs(g_, std::span<const Vertex>(&origin_, 1), Lp_, kAllVertices, *ws);
    std::vector<std::pair<Vertex, Distance>> hs;
    for (Vertex v : ws->order()) hs.emplace_back(v, ws->dist(v));
    add_bag(VertexSet::from_unsorted(ws->order()), VertexSet{origin_}, Lp_, 0, 0, hs);
  }

  const Distance r1 = (3 * K_ + 1) / 2, d1 = 3 * K_;
  const Distance r2 = ell_ + 2 * K_, d2 = 4 * ell_ + 5 * K_;
  const Distance D = static_cast<Distance>(18 * p_.t * K_ - 12 * K_ - 2);
  const std::uint32_t tm1 = p_.t - 1;

  for (std::uint32_t n = 0;; ++n) {
    // Frontier N(G^n): all of it lies next to the newest layer.
    std::vector<Vertex> frontier;
    for (NodeId h : layers_[n])
      for (Vertex v : bags_[h].vertices)
        for (Vertex w : g_.neighbors(v))
          if (!assigned(w)) frontier.push_back(w);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    if (frontier.empty()) break;
    ++steps_;

    // Components of G - G^n.
    std::vector<StepComponent> comps;
    std::vector<std::uint32_t> comp_of(n_, kNone);
    {
      WorkspaceLease ws;
      auto open = [&](Vertex v) { return !assigned(v); };
      for (Vertex s : frontier) {
        if (comp_of[s] != kNone) continue;
        bfs(g_, std::span<const Vertex>(&s, 1), kInfinity - 1, open, *ws);
        StepComponent c;
        std::vector<Vertex> bnd;
        for (Vertex v : ws->order()) {
          comp_of[v] = static_cast<std::uint32_t>(comps.size());
          bool b = false;
          for (Vertex w : g_.neighbors(v))
            if (assigned(w)) {
              b = true;
              c.touched.push_back(node_of_[w]);
            }
          if (b) bnd.push_back(v);
        }
        std::sort(c.touched.begin(), c.touched.end());
        c.touched.erase(std::unique(c.touched.begin(), c.touched.end()), c.touched.end());
        c.vertices = VertexSet::from_unsorted(ws->order());
        c.boundary = VertexSet::from_sorted(std::move(bnd));
        comps.push_back(std::move(c));
      }
    }
    // Components of G - G^{n-1}: grow through the newest layer.
    {
      std::vector<std::uint32_t> z_of(n_, kNone);
      WorkspaceLease ws;
      auto open = [&](Vertex v) { return !assigned(v) || layer_of(v) == n; };
      std::uint32_t z = 0;
      for (auto& c : comps) {
        Vertex s = c.vertices.min();
        if (z_of[s] == kNone) {
          bfs(g_, std::span<const Vertex>(&s, 1), kInfinity - 1, open, *ws);
          for (Vertex v : ws->order()) z_of[v] = z;
          ++z;
        }
        c.z = z_of[s];
      }
    }
    std::sort(comps.begin(), comps.end(),
              [](const StepComponent& a, const StepComponent& b) { return a.vertices.min() < b.vertices.min(); });

    // Boundary audits and near-components.
    for (auto& c : comps) {
      c.near = near_components(g_, c.boundary, 3 * K_);
      if (auto w = audit_component(c)) return std::move(*w);
    }

    // Groups: components touching >= 2 classes gather by Z; the rest stand alone.
    std::vector<std::vector<std::size_t>> groups;
    std::map<std::uint32_t, std::size_t> group_of_z;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].touched.size() >= 2) {
        auto [it, fresh] = group_of_z.emplace(comps[i].z, groups.size());
        if (fresh) groups.emplace_back();
        groups[it->second].push_back(i);
      } else {
        groups.push_back({i});
      }
    }

    for (const auto& grp : groups) {
      if (comps[grp.front()].touched.size() < 2) continue;
      std::vector<NodeId> nodes;
      for (auto i : grp) nodes.insert(nodes.end(), comps[i].touched.begin(), comps[i].touched.end());
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
      if (nodes.size() > tm1)
        throw PartitionError("a component of G - G^" + std::to_string(n) + " meets " + std::to_string(nodes.size()) +
                             " classes of the newest layer (more than t-1)");
      std::vector<VertexSet> xs;
      for (NodeId h : nodes) xs.push_back(x_for_node(h));
      AuditOutcome a;
      try {
        a = audit_attachments(g_, xs, K_, p_.t);
      } catch (const AuditError& e) {
        throw PartitionError(std::string("attachment audit hypotheses fail: ") + e.what());
      }
      if (a.is_witness()) return witness_outcome(std::move(a));
    }

    // Merge and create the next layer.
    auto open_mask = std::make_shared<std::vector<std::uint8_t>>(n_, 0);
    for (Vertex v = 0; v < n_; ++v) (*open_mask)[v] = assigned(v) ? 0 : 1;

    struct NewBag {
      VertexSet attachment;
      Distance height, depth;
      std::vector<std::pair<Vertex, Distance>> heights;
    };
    std::vector<NewBag> fresh;
    for (std::uint32_t gi = 0; gi < groups.size(); ++gi) {
      std::vector<VertexSet> family;
      for (auto i : groups[gi])
        family.insert(family.end(), comps[i].near.classes.begin(), comps[i].near.classes.end());
      std::sort(family.begin(), family.end(), [](const VertexSet& a, const VertexSet& b) { return a.min() < b.min(); });
      // Maximal 3K-dispersed subfamily, then fold the rest into the first close member.
      std::vector<std::size_t> kept;
      std::vector<std::size_t> target(family.size(), kNone);
      for (std::size_t i = 0; i < family.size(); ++i) {
        std::size_t close = kNone;
        for (auto k : kept)
          if (distance_sets_bounded(g_, family[i], family[k], 3 * K_ - 1) != kInfinity) {
            close = k;
            break;
          }
        if (close == kNone) {
          kept.push_back(i);
          target[i] = i;
        } else {
          target[i] = close;
        }
      }
      std::vector<VertexSet> q;
      for (auto k : kept) {
        std::vector<Vertex> merged;
        for (std::size_t i = 0; i < family.size(); ++i)
          if (target[i] == k) merged.insert(merged.end(), family[i].begin(), family[i].end());
        q.push_back(VertexSet::from_unsorted(std::move(merged)));
      }

      MergeProblem first;
      first.host = &g_;
      first.q_family = std::move(q);
      first.r = r1;
      first.d = d1;
      first.diameter_bound = D;
      MergeResult m1 = merge_partition(first);
      if (m1.level > ell_)
        throw PartitionError("first merge reached level " + std::to_string(m1.level) + " > L = " +
                             std::to_string(ell_) + "; the profile's N is too small for this graph");
      MergeProblem second;
      second.host = &g_;
      second.host_mask = open_mask;
      second.q_family = m1.p_family;
      second.r = r2;
      second.d = d2;
      MergeResult m2 = merge_partition(second);
      if (std::uint64_t{m2.level} + ell_ + K_ > Lp_)
        throw PartitionError("second merge reached level " + std::to_string(m2.level) +
                             " so the bag height would exceed L' = " + std::to_string(Lp_));
      if (opts_.record_merges) {
        merges_.push_back({n, gi, "first", first, m1});
        merges_.push_back({n, gi, "second", second, m2});
      }
      const Distance height = m2.level + ell_ + K_;
      for (const auto& a : m2.p_family) {
        const Distance cap = static_cast<Distance>(std::min<std::uint64_t>(R0_, kInfinity - 2));
        if (set_diameter(g_, a, cap) == kInfinity)
          throw PartitionError("attachment set has diameter above R0 = " + std::to_string(R0_));
        WorkspaceLease ws;
        bfs(g_, a.members(), height, [&](Vertex v) { return (*open_mask)[v] != 0; }, *ws);
        NewBag nb{a, height, m1.level, {}};
        for (Vertex v : ws->order()) nb.heights.emplace_back(v, ws->dist(v));
        fresh.push_back(std::move(nb));
      }
    }
    std::sort(fresh.begin(), fresh.end(), [](const NewBag& a, const NewBag& b) {
      return a.attachment.min() < b.attachment.min();
    });
    for (auto& nb : fresh) {
      std::vector<Vertex> vs;
      for (auto [v, h] : nb.heights) vs.push_back(v);
      add_bag(VertexSet::from_unsorted(std::move(vs)), nb.attachment, nb.height, nb.depth, n + 1, nb.heights);
    }
  }

  for (Vertex v = 0; v < n_; ++v)
    if (!assigned(v)) throw PartitionError("construction stopped with unassigned vertices");

  LayeredPartition lp;
  lp.vertex_count = n_;
  lp.root = 0;
  lp.bags = std::move(bags_);
  lp.node_of = std::move(node_of_);
  std::vector<std::pair<NodeId, NodeId>> he;
  for (auto [u, v] : g_.edges()) {
    NodeId a = lp.node_of[u], b = lp.node_of[v];
    if (a != b) he.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(he.begin(), he.end());
  he.erase(std::unique(he.begin(), he.end()), he.end());
  lp.h_edges = std::move(he);

  BuildOutcome out;
  out.kind = BuildOutcome::Kind::Partition;
  out.profile = p_;
  out.partition = std::move(lp);
  out.steps = steps_;
  out.merges = std::move(merges_);
  return out;
}

}  // namespace

Graph LayeredPartition::quotient() const {
  std::vector<Edge> e(h_edges.begin(), h_edges.end());
  return Graph(bags.size(), e);
}

std::uint32_t LayeredPartition::layer_count() const {
  std::uint32_t m = 0;
  for (const auto& b : bags) m = std::max(m, b.layer + 1);
  return m;
}

void LayeredPartition::rebuild_node_of() {
  node_of.assign(vertex_count, kNoNode);
  for (const auto& b : bags)
    for (Vertex v : b.vertices)
      if (v < vertex_count) node_of[v] = b.id;
}

BuildOutcome build_partition(const Graph& g, const ConstantsProfile& profile, const BuildOptions& options) {
  Builder b(g, profile, options);
  return b.run();
}

}  // namespace coarse_minor
