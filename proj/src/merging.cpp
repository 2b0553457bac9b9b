#include <coarse_minor/bfs.hpp>
#include <coarse_minor/merging.hpp>

#include <algorithm>
#include <numeric>

namespace coarse_minor {

namespace {

struct HostView {
  const Graph& g;
  const std::vector<std::uint8_t>* mask;
  bool allowed(Vertex v) const { return mask == nullptr || (*mask)[v] != 0; }
};

// For every member b != a: distance from family[a] to family[b] if below `limit`, else kInfinity.
std::vector<Distance> distances_from(const HostView& h, const std::vector<VertexSet>& family,
                                     std::size_t a, Distance limit,
                                     const std::vector<std::uint32_t>& owner) {
  std::vector<Distance> out(family.size(), kInfinity);
  if (limit == 0) return out;
  WorkspaceLease ws;
  bfs(h.g, family[a].members(), limit - 1, [&](Vertex v) { return h.allowed(v); }, *ws);
  for (Vertex v : ws->order()) {
    auto o = owner[v];
    if (o != std::numeric_limits<std::uint32_t>::max() && o != a) out[o] = std::min(out[o], ws->dist(v));
  }
  return out;
}

void validate(const MergeProblem& p) {
  if (p.host == nullptr) throw MergeError("merge problem has no host");
  const Graph& g = *p.host;
  if (p.host_mask && p.host_mask->size() != g.vertex_count())
    throw MergeError("host mask size does not match host");
  std::vector<std::uint8_t> used(g.vertex_count(), 0);
  for (std::size_t i = 0; i < p.q_family.size(); ++i) {
    const auto& q = p.q_family[i];
    g.check_set(q);
    if (q.empty()) throw MergeError("q_family member " + std::to_string(i) + " is empty");
    for (Vertex v : q) {
      if (p.host_mask && !(*p.host_mask)[v])
        throw MergeError("q_family member " + std::to_string(i) + " leaves the host");
      if (used[v]) throw MergeError("q_family members overlap at vertex " + std::to_string(v));
      used[v] = 1;
    }
  }
}

}  // namespace

MergeResult merge_partition(const MergeProblem& p) {
  validate(p);
  const Graph& g = *p.host;
  HostView h{g, p.host_mask.get()};
  const std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

  std::vector<VertexSet> family = p.q_family;
  std::vector<std::vector<std::uint32_t>> prov(family.size());
  for (std::uint32_t i = 0; i < family.size(); ++i) prov[i] = {i};
  auto sort_family = [&] {
    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return family[a].min() < family[b].min(); });
    std::vector<VertexSet> f2;
    std::vector<std::vector<std::uint32_t>> p2;
    for (auto i : order) {
      f2.push_back(std::move(family[i]));
      p2.push_back(std::move(prov[i]));
    }
    family = std::move(f2);
    prov = std::move(p2);
  };
  sort_family();

  std::vector<std::uint32_t> owner(g.vertex_count(), none);
  MergeResult res;
  Distance level = p.r;
  for (;;) {
    for (std::uint32_t i = 0; i < family.size(); ++i)
      for (Vertex v : family[i]) owner[v] = i;
    const Distance threshold = 2 * level + p.d;
    // Lexicographically least pair (by minimum vertices) closer than the threshold.
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (std::size_t a = 0; a < family.size() && !pick; ++a) {
      auto dist = distances_from(h, family, a, threshold, owner);
      for (std::size_t b = a + 1; b < family.size(); ++b)
        if (dist[b] < threshold) {
          pick = {a, b};
          break;
        }
    }
    if (!pick) break;
    auto [a, b] = *pick;
    for (Vertex v : family[b]) owner[v] = none;
    family[a] = family[a].unite(family[b]);
    prov[a].insert(prov[a].end(), prov[b].begin(), prov[b].end());
    std::sort(prov[a].begin(), prov[a].end());
    family.erase(family.begin() + static_cast<std::ptrdiff_t>(b));
    prov.erase(prov.begin() + static_cast<std::ptrdiff_t>(b));
    ++res.merges;
    level = p.r + (res.merges * p.d) / 2;
  }
  res.p_family = std::move(family);
  res.provenance = std::move(prov);
  res.level = level;
  return res;
}

std::vector<std::string> check_merge_result(const MergeProblem& p, const MergeResult& r) {
  std::vector<std::string> out;
  validate(p);
  const Graph& g = *p.host;
  HostView h{g, p.host_mask.get()};
  const std::size_t n = p.q_family.size();
  const Distance L = r.level;
  if (L < p.r || L > p.r + (n * p.d) / 2)
    out.push_back("level " + std::to_string(L) + " outside [r, r + floor(nd/2)]");
  if (r.p_family.size() != r.provenance.size()) {
    out.push_back("provenance size mismatch");
    return out;
  }
  // Coarsening: provenance covers q_family exactly once and unions match.
  std::vector<int> used(n, 0);
  for (std::size_t a = 0; a < r.p_family.size(); ++a) {
    VertexSet u;
    for (auto q : r.provenance[a]) {
      if (q >= n) {
        out.push_back("provenance index out of range");
        return out;
      }
      ++used[q];
      u = u.unite(p.q_family[q]);
    }
    if (!(u == r.p_family[a])) out.push_back("member " + std::to_string(a) + " is not the union of its provenance");
  }
  for (std::size_t q = 0; q < n; ++q)
    if (used[q] != 1) out.push_back("q_family member " + std::to_string(q) + " absorbed " + std::to_string(used[q]) + " times");
  if (!out.empty()) return out;

  auto host_distance = [&](const VertexSet& a, const VertexSet& b, Distance limit) {
    WorkspaceLease ws;
    Marker target;
    target.prepare(g.vertex_count());
    for (Vertex v : b) target.mark(v);
    Distance found = kInfinity;
    bfs(g, a.members(), limit, [&](Vertex v) { return h.allowed(v); }, *ws, [&](Vertex v, Distance d) {
      if (target.marked(v)) {
        found = d;
        return true;
      }
      return false;
    });
    return found;
  };

  // (i) chain condition within each member.
  for (std::size_t a = 0; a < r.p_family.size(); ++a) {
    const auto& parts = r.provenance[a];
    DisjointSets dsu(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        if (host_distance(p.q_family[parts[i]], p.q_family[parts[j]], 2 * L) <= 2 * L)
          dsu.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    for (std::size_t i = 1; i < parts.size(); ++i)
      if (dsu.find(static_cast<std::uint32_t>(i)) != 0) {
        out.push_back("member " + std::to_string(a) + " is not chained with gaps <= 2L");
        break;
      }
  }
  // (ii) separation.
  for (std::size_t a = 0; a < r.p_family.size(); ++a)
    for (std::size_t b = a + 1; b < r.p_family.size(); ++b) {
      Distance d = host_distance(r.p_family[a], r.p_family[b], 2 * L + p.d - 1);
      if (d < 2 * L + p.d)
        out.push_back("members " + std::to_string(a) + " and " + std::to_string(b) + " at distance " +
                      std::to_string(d) + " < 2L + d");
    }
  // (iii) diameter bound, measured in the host.
  if (p.diameter_bound) {
    const std::uint64_t bound = std::uint64_t{n} * *p.diameter_bound +
                                (n == 0 ? 0 : (n - 1)) * (2 * std::uint64_t{p.r} + std::uint64_t{n} * p.d);
    for (std::size_t a = 0; a < r.p_family.size(); ++a) {
      const auto& s = r.p_family[a];
      Marker inside;
      inside.prepare(g.vertex_count());
      for (Vertex v : s) inside.mark(v);
      const Distance cap = static_cast<Distance>(std::min<std::uint64_t>(bound, kInfinity - 1));
      for (Vertex src : s) {
        std::size_t found = 0;
        WorkspaceLease ws;
        bfs(g, std::span<const Vertex>(&src, 1), cap, [&](Vertex v) { return h.allowed(v); }, *ws,
            [&](Vertex v, Distance) { return inside.marked(v) && ++found == s.size(); });
        if (found < s.size()) {
          out.push_back("member " + std::to_string(a) + " has diameter above nD + (n-1)(2r+nd) = " +
                        std::to_string(bound));
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace coarse_minor
