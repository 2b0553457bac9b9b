#include <coarse_minor/bfs.hpp>
#include <coarse_minor/theta_finder.hpp>

#include <algorithm>

namespace coarse_minor {

namespace {

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1U; }
void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

// Exact maximum-independent-set style search on the conflict relation.
class DispersionSearch {
 public:
  DispersionSearch(std::vector<Bits> conflicts, std::uint32_t target)
      : conflicts_(std::move(conflicts)), target_(target) {}

  std::optional<std::vector<std::size_t>> run(std::size_t n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    if (search(all)) return chosen_;
    return std::nullopt;
  }

 private:
  // Greedy clique cover of the candidates; its size bounds any independent set.
  std::size_t clique_cover_bound(const std::vector<std::size_t>& cand) const {
    std::vector<Bits> common;
    for (std::size_t v : cand) {
      bool placed = false;
      for (auto& c : common)
        if (test_bit(c, v)) {
          for (std::size_t w = 0; w < c.size(); ++w) c[w] &= conflicts_[v][w];
          placed = true;
          break;
        }
      if (!placed) common.push_back(conflicts_[v]);
    }
    return common.size();
  }

  bool search(const std::vector<std::size_t>& cand) {
    if (chosen_.size() >= target_) return true;
    if (chosen_.size() + cand.size() < target_) return false;
    if (chosen_.size() + clique_cover_bound(cand) < target_) return false;
    std::size_t v = cand.front();
    std::vector<std::size_t> rest;
    rest.reserve(cand.size());
    for (std::size_t i = 1; i < cand.size(); ++i)
      if (!test_bit(conflicts_[v], cand[i])) rest.push_back(cand[i]);
    chosen_.push_back(v);
    if (search(rest)) return true;
    chosen_.pop_back();
    std::vector<std::size_t> without(cand.begin() + 1, cand.end());
    return search(without);
  }

  std::vector<Bits> conflicts_;
  std::uint32_t target_;
  std::vector<std::size_t> chosen_;
};

void require_connected(const Graph& g, const VertexSet& s, const std::string& what) {
  if (s.empty()) throw AuditError(what + " is empty");
  if (!is_connected_set(g, s)) throw AuditError(what + " is not connected");
}

AuditOutcome confirmation(std::string rule, std::map<std::string, std::int64_t> measurements) {
  AuditOutcome out;
  out.kind = AuditOutcome::Kind::Confirmation;
  out.rule = std::move(rule);
  out.measurements = std::move(measurements);
  return out;
}

AuditOutcome witness(std::string rule, FatModel model, std::map<std::string, std::int64_t> measurements) {
  AuditOutcome out;
  out.kind = AuditOutcome::Kind::Witness;
  out.rule = std::move(rule);
  out.measurements = std::move(measurements);
  out.witness = std::move(model);
  return out;
}

}  // namespace

std::optional<VertexSet> find_dispersed_tuple(const Graph& g, const VertexSet& s, std::uint32_t t,
                                              Distance sep) {
  if (t < 1) throw AuditError("find_dispersed_tuple needs t >= 1");
  g.check_set(s);
  if (s.size() < t) return std::nullopt;
  if (sep == 0) return VertexSet::from_sorted(std::vector<Vertex>(s.begin(), s.begin() + t));

  // Greedy pass: admit every member that is not blocked by an admitted one.
  {
    Marker blocked;
    blocked.prepare(g.vertex_count());
    WorkspaceLease ws;
    std::vector<Vertex> admitted;
    for (Vertex v : s) {
      if (blocked.marked(v)) continue;
      admitted.push_back(v);
      if (admitted.size() == t) return VertexSet::from_sorted(std::move(admitted));
      bfs(g, std::span<const Vertex>(&v, 1), sep - 1, kAllVertices, *ws);
      for (Vertex w : ws->order()) blocked.mark(w);
    }
  }

  // Exact fallback over the conflict relation "distance < sep".
  const std::size_t n = s.size();
  std::vector<std::uint32_t> index(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < n; ++i) index[s.members()[i]] = static_cast<std::uint32_t>(i);
  std::vector<Bits> conflicts(n, Bits((n + 63) / 64, 0));
  WorkspaceLease ws;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex src = s.members()[i];
    bfs(g, std::span<const Vertex>(&src, 1), sep - 1, kAllVertices, *ws);
    for (Vertex w : ws->order())
      if (index[w] != std::numeric_limits<std::uint32_t>::max()) set_bit(conflicts[i], index[w]);
  }
  DispersionSearch search(std::move(conflicts), t);
  auto found = search.run(n);
  if (!found) return std::nullopt;
  std::vector<Vertex> out;
  for (auto i : *found) out.push_back(s.members()[i]);
  return VertexSet::from_unsorted(std::move(out));
}

FatModel theta_from_tuple(const Graph& g, const VertexSet& x_set, const VertexSet& y_set,
                          const VertexSet& tuple, Distance k) {
  g.check_set(x_set);
  g.check_set(y_set);
  g.check_set(tuple);
  require_connected(g, x_set, "X");
  require_connected(g, y_set, "Y");
  if (x_set.intersects(y_set)) throw AuditError("X and Y intersect");
  if (tuple.empty()) throw AuditError("empty tuple");
  WorkspaceLease ws;
  bfs(g, x_set.members(), k, kAllVertices, *ws);
  for (Vertex y : y_set)
    if (ws->dist(y) < k) throw AuditError("X and Y are closer than " + std::to_string(k));
  FatModel m;
  m.pattern = PatternGraph::theta(static_cast<std::uint32_t>(tuple.size()));
  m.branch_sets = {y_set, x_set};
  m.claimed_fatness = k;
  for (Vertex u : tuple) {
    if (!y_set.contains(u)) throw AuditError("tuple vertex " + std::to_string(u) + " is not in Y");
    if (ws->dist(u) != k)
      throw AuditError("tuple vertex " + std::to_string(u) + " is not at distance " + std::to_string(k) + " from X");
    m.branch_paths.push_back(trace_to_source(*ws, u));
  }
  return m;
}

AuditOutcome theta_from_dispersion(const Graph& g, const DispersionQuery& q) {
  if (q.t < 1) throw AuditError("t must be at least 1");
  g.check_set(q.x_set);
  g.check_set(q.y_set);
  require_connected(g, q.x_set, "x_set");
  require_connected(g, q.y_set, "y_set");
  if (q.x_set.intersects(q.y_set)) throw AuditError("x_set and y_set intersect");
  if (q.k > 0 && distance_sets_bounded(g, q.x_set, q.y_set, q.k - 1) != kInfinity)
    throw AuditError("x_set and y_set are closer than k = " + std::to_string(q.k));
  VertexSet candidates = ball(g, q.x_set, q.k).intersect(q.y_set);
  std::map<std::string, std::int64_t> meas{{"candidates", static_cast<std::int64_t>(candidates.size())}};
  auto tuple = find_dispersed_tuple(g, candidates, q.t, 3 * q.k);
  if (!tuple) return confirmation("dispersion", meas);
  return witness("dispersion", theta_from_tuple(g, q.x_set, q.y_set, *tuple, q.k), meas);
}

AuditOutcome audit_boundary(const Graph& g, const VertexSet& x_set, Distance k, const VertexSet& c,
                            std::uint32_t t) {
  if (k < 1) throw AuditError("audit_boundary needs k >= 1");
  if (t < 2) throw AuditError("audit_boundary needs t >= 2");
  g.check_set(x_set);
  g.check_set(c);
  require_connected(g, x_set, "x_set");
  VertexSet near_x = ball(g, x_set, k - 1);
  if (c.empty() || c.intersects(near_x) || !is_connected_set(g, c))
    throw AuditError("c is not a component of g - ball(x_set, k-1)");
  for (Vertex v : c)
    for (Vertex w : g.neighbors(v))
      if (!c.contains(w) && !near_x.contains(w))
        throw AuditError("c is not a component of g - ball(x_set, k-1)");

  VertexSet bnd = boundary_of(g, c);
  auto fam = near_components(g, bnd, 3 * k);
  std::map<std::string, std::int64_t> meas{
      {"near_components", static_cast<std::int64_t>(fam.classes.size())},
      {"boundary_size", static_cast<std::int64_t>(bnd.size())}};

  if (fam.classes.size() >= t) {
    std::vector<Vertex> pick;
    for (std::uint32_t i = 0; i < t; ++i) pick.push_back(fam.classes[i].min());
    return witness("boundary-count",
                   theta_from_tuple(g, x_set, c, VertexSet::from_sorted(std::move(pick)), k), meas);
  }

  const Distance limit = 6 * k * (t - 1);
  Distance max_diam = 0;
  Marker member;
  for (const auto& cls : fam.classes) {
    member.prepare(g.vertex_count());
    for (Vertex v : cls) member.mark(v);
    Vertex far_u = kNoVertex, far_v = kNoVertex;
    WorkspaceLease ws;
    for (Vertex u : cls) {
      bfs(g, std::span<const Vertex>(&u, 1), limit - 1, kAllVertices, *ws);
      for (Vertex v : cls) {
        Distance d = ws->dist(v);
        if (d == kInfinity) {
          far_u = u;
          far_v = v;
          break;
        }
        max_diam = std::max(max_diam, d);
      }
      if (far_u != kNoVertex) break;
    }
    if (far_u == kNoVertex) continue;

    // Near path far_u = x_0, ..., x_n = far_v inside the class (hops of length <= 3k).
    std::vector<Vertex> near_parent(g.vertex_count(), kNoVertex);
    std::vector<Vertex> frontier{far_u};
    Marker seen;
    seen.prepare(g.vertex_count());
    seen.mark(far_u);
    for (std::size_t head = 0; head < frontier.size() && !seen.marked(far_v); ++head) {
      Vertex x = frontier[head];
      bfs(g, std::span<const Vertex>(&x, 1), 3 * k, kAllVertices, *ws);
      for (Vertex w : ws->order())
        if (member.marked(w) && !seen.marked(w)) {
          seen.mark(w);
          near_parent[w] = x;
          frontier.push_back(w);
        }
    }
    std::vector<Vertex> chain;
    for (Vertex x = far_v; x != kNoVertex; x = near_parent[x]) chain.push_back(x);
    std::reverse(chain.begin(), chain.end());

    // Walk W through the chain; each walk vertex remembers its nearer chain endpoint.
    std::vector<Vertex> walk{chain.front()};
    std::vector<Vertex> snap{chain.front()};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      auto seg = shortest_path(g, VertexSet{chain[i]}, chain[i + 1]);
      const std::size_t len = seg.size() - 1;
      for (std::size_t p = 1; p <= len; ++p) {
        walk.push_back(seg[p]);
        snap.push_back(2 * p <= len ? chain[i] : chain[i + 1]);
      }
    }
    WorkspaceLease from_u;
    bfs(g, std::span<const Vertex>(&far_u, 1), kInfinity - 1, kAllVertices, *from_u);
    std::vector<Vertex> tuple{far_u};
    std::size_t pos = 0;
    for (std::uint32_t j = 1; j + 1 < t; ++j) {
      while (from_u->dist(walk[pos]) < 6 * k * j) ++pos;
      tuple.push_back(snap[pos]);
    }
    tuple.push_back(far_v);
    meas["diameter_exceeds"] = limit;
    return witness("boundary-diameter",
                   theta_from_tuple(g, x_set, c, VertexSet::from_unsorted(std::move(tuple)), k), meas);
  }
  meas["max_diameter"] = max_diam;
  return confirmation("boundary", meas);
}

AuditOutcome audit_attachments(const Graph& g, const std::vector<VertexSet>& x_sets, Distance k,
                               std::uint32_t t) {
  if (t < 3) throw AuditError("audit_attachments needs t >= 3");
  if (k < 1) throw AuditError("audit_attachments needs k >= 1");
  if (x_sets.size() > t - 1)
    throw AuditError("audit_attachments accepts at most t-1 = " + std::to_string(t - 1) + " sets");
  for (std::size_t i = 0; i < x_sets.size(); ++i) {
    g.check_set(x_sets[i]);
    require_connected(g, x_sets[i], "x_sets[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < x_sets.size(); ++i)
    for (std::size_t j = i + 1; j < x_sets.size(); ++j)
      if (distance_sets_bounded(g, x_sets[i], x_sets[j], 3 * k - 1) != kInfinity)
        throw AuditError("x_sets[" + std::to_string(i) + "] and x_sets[" + std::to_string(j) +
                         "] are closer than 3k = " + std::to_string(3 * k));

  const std::size_t n = g.vertex_count();
  const std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n, none);
  std::vector<VertexSet> balls;
  for (std::uint32_t i = 0; i < x_sets.size(); ++i) {
    balls.push_back(ball(g, x_sets[i], k - 1));
    for (Vertex v : balls.back()) label[v] = i;
  }

  // Components of g - V' whose neighbourhood meets at least two balls.
  std::vector<std::uint32_t> comp_of(n, none);
  struct Straddler {
    VertexSet vertices;
    std::vector<std::uint32_t> touched;  // ball labels, ascending
  };
  std::vector<Straddler> straddlers;
  std::vector<Vertex> candidates;
  WorkspaceLease ws;
  std::vector<std::uint8_t> seen(n, 0);
  auto outside = [&](Vertex v) { return label[v] == none; };
  for (Vertex s = 0; s < n; ++s) {
    if (!outside(s) || seen[s]) continue;
    bfs(g, std::span<const Vertex>(&s, 1), kInfinity - 1, outside, *ws);
    std::vector<std::uint32_t> touched;
    std::vector<Vertex> bnd;
    for (Vertex v : ws->order()) {
      seen[v] = 1;
      bool on_boundary = false;
      for (Vertex w : g.neighbors(v))
        if (!outside(w)) {
          touched.push_back(label[w]);
          on_boundary = true;
        }
      if (on_boundary) bnd.push_back(v);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    if (touched.size() < 2) continue;
    auto id = static_cast<std::uint32_t>(straddlers.size());
    for (Vertex v : ws->order()) comp_of[v] = id;
    straddlers.push_back({VertexSet::from_unsorted(ws->order()), touched});
    candidates.insert(candidates.end(), bnd.begin(), bnd.end());
  }
  VertexSet pool = VertexSet::from_unsorted(std::move(candidates));
  const std::uint32_t tm1 = t - 1, tm2 = t - 2;
  const std::uint32_t target = tm1 * tm1 * tm1 * tm2 + 1;
  std::map<std::string, std::int64_t> meas{
      {"straddling_components", static_cast<std::int64_t>(straddlers.size())},
      {"candidates", static_cast<std::int64_t>(pool.size())},
      {"target", target}};
  auto found = find_dispersed_tuple(g, pool, target, 3 * k);
  if (!found) return confirmation("attachments", meas);

  // Pigeonhole: a ball i touched by many tuple vertices.
  auto touches = [&](Vertex u, std::uint32_t i) {
    for (Vertex w : g.neighbors(u))
      if (label[w] == i) return true;
    return false;
  };
  const std::uint32_t need_i = tm1 * tm1 * tm2 + 1;
  std::uint32_t bi = none;
  std::vector<Vertex> ui;
  for (std::uint32_t i = 0; i < x_sets.size() && bi == none; ++i) {
    std::vector<Vertex> hit;
    for (Vertex u : *found)
      if (touches(u, i)) hit.push_back(u);
    if (hit.size() >= need_i) {
      bi = i;
      ui = std::move(hit);
    }
  }
  if (bi == none) throw AuditError("pigeonhole step failed to select a ball");
  // Then a second ball j touched by the components of many of those.
  const std::uint32_t need_j = tm1 * tm1 + 1;
  std::uint32_t bj = none;
  std::vector<Vertex> uj;
  for (std::uint32_t j = 0; j < x_sets.size() && bj == none; ++j) {
    if (j == bi) continue;
    std::vector<Vertex> hit;
    for (Vertex u : ui) {
      const auto& touched = straddlers[comp_of[u]].touched;
      if (std::binary_search(touched.begin(), touched.end(), j)) hit.push_back(u);
    }
    if (hit.size() >= need_j) {
      bj = j;
      uj = std::move(hit);
    }
  }
  if (bj == none) throw AuditError("pigeonhole step failed to select a second ball");
  meas["ball_i"] = bi;
  meas["ball_j"] = bj;

  std::map<std::uint32_t, std::vector<Vertex>> by_component;
  for (Vertex u : uj) by_component[comp_of[u]].push_back(u);
  for (auto& [cid, members] : by_component)
    if (members.size() >= t) {
      members.resize(t);
      return witness("attachments",
                     theta_from_tuple(g, x_sets[bi], straddlers[cid].vertices,
                                      VertexSet::from_sorted(members), k),
                     meas);
    }
  if (by_component.size() < t) throw AuditError("pigeonhole step found fewer than t components");
  VertexSet side = balls[bj];
  std::vector<Vertex> picks;
  for (auto& [cid, members] : by_component) {
    if (picks.size() == t) break;
    side = side.unite(straddlers[cid].vertices);
    picks.push_back(members.front());
  }
  return witness("attachments",
                 theta_from_tuple(g, x_sets[bi], side, VertexSet::from_unsorted(std::move(picks)), k),
                 meas);
}

}  // namespace coarse_minor
