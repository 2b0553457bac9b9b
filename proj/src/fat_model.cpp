#include <coarse_minor/bfs.hpp>
#include <coarse_minor/fat_model.hpp>

#include <algorithm>
#include <map>
#include <unordered_map>

namespace coarse_minor {

// ---- PatternGraph ------------------------------------------------------

PatternGraph PatternGraph::theta(std::uint32_t t) {
  if (t < 1) throw ModelError("theta pattern needs t >= 1");
  PatternGraph p;
  p.name = "theta:" + std::to_string(t);
  p.vertex_count = 2;
  p.edges.assign(t, {0, 1});
  return p;
}

PatternGraph PatternGraph::k2t(std::uint32_t t) {
  if (t < 1) throw ModelError("K_{2,t} pattern needs t >= 1");
  PatternGraph p;
  p.name = "k2t:" + std::to_string(t);
  p.vertex_count = t + 2;
  for (std::uint32_t i = 0; i < t; ++i) {
    p.edges.emplace_back(0, 2 + i);
    p.edges.emplace_back(2 + i, 1);
  }
  return p;
}

PatternGraph PatternGraph::cycle(std::uint32_t n) {
  if (n < 2) throw ModelError("cycle pattern needs n >= 2");
  PatternGraph p;
  p.name = "cycle:" + std::to_string(n);
  p.vertex_count = n;
  for (std::uint32_t i = 0; i < n; ++i) p.edges.emplace_back(i, (i + 1) % n);
  return p;
}

PatternGraph PatternGraph::subdivided(const PatternGraph& j) {
  PatternGraph p;
  p.name = j.name.empty() ? "subdivided" : j.name + "/subdivided";
  p.vertex_count = j.vertex_count + static_cast<std::uint32_t>(j.edges.size());
  for (std::size_t i = 0; i < j.edges.size(); ++i) {
    auto w = j.vertex_count + static_cast<std::uint32_t>(i);
    p.edges.emplace_back(j.edges[i].first, w);
    p.edges.emplace_back(w, j.edges[i].second);
  }
  if (j.name.rfind("theta:", 0) == 0) p.name = "k2t:" + j.name.substr(6);
  return p;
}

void PatternGraph::validate() const {
  for (auto [x, y] : edges) {
    if (x >= vertex_count || y >= vertex_count)
      throw ModelError("pattern edge (" + std::to_string(x) + ", " + std::to_string(y) +
                       ") out of range");
    if (x == y) throw ModelError("pattern has a self-loop at " + std::to_string(x));
  }
}

std::uint32_t PatternGraph::multiplicity(std::uint32_t x, std::uint32_t y) const {
  std::uint32_t count = 0;
  for (auto [a, b] : edges)
    if ((a == x && b == y) || (a == y && b == x)) ++count;
  return count;
}

std::string describe(const ModelObject& o) {
  return (o.kind == ModelObject::Kind::BranchSet ? "U[" : "E[") + std::to_string(o.index) + "]";
}

// ---- verification ------------------------------------------------------

namespace {

ModelObject set_obj(std::uint32_t i) { return {ModelObject::Kind::BranchSet, i}; }
ModelObject path_obj(std::uint32_t i) { return {ModelObject::Kind::BranchPath, i}; }

void structural(FatnessReport& rep, ModelObject a, ModelObject b, std::string detail) {
  Violation v;
  v.kind = Violation::Kind::Structure;
  v.first = a;
  v.second = b;
  v.detail = std::move(detail);
  rep.violations.push_back(std::move(v));
}

// Returns false when ids are out of range, in which case distances are skipped.
bool check_structure(const Graph& g, const FatModel& m, FatnessReport& rep) {
  const auto& pat = m.pattern;
  try {
    pat.validate();
  } catch (const ModelError& e) {
    structural(rep, set_obj(0), set_obj(0), e.what());
    return false;
  }
  if (m.branch_sets.size() != pat.vertex_count || m.branch_paths.size() != pat.edges.size()) {
    structural(rep, set_obj(0), set_obj(0), "model size does not match pattern");
    return false;
  }
  const std::size_t n = g.vertex_count();
  for (std::uint32_t x = 0; x < m.branch_sets.size(); ++x)
    for (Vertex v : m.branch_sets[x])
      if (v >= n) {
        structural(rep, set_obj(x), set_obj(x), "vertex " + std::to_string(v) + " out of range");
        return false;
      }
  for (std::uint32_t e = 0; e < m.branch_paths.size(); ++e)
    for (Vertex v : m.branch_paths[e])
      if (v >= n) {
        structural(rep, path_obj(e), path_obj(e), "vertex " + std::to_string(v) + " out of range");
        return false;
      }

  std::unordered_map<Vertex, std::uint32_t> owner;
  for (std::uint32_t x = 0; x < m.branch_sets.size(); ++x) {
    const auto& u = m.branch_sets[x];
    if (u.empty()) {
      structural(rep, set_obj(x), set_obj(x), "branch set is empty");
      continue;
    }
    if (!is_connected_set(g, u)) structural(rep, set_obj(x), set_obj(x), "branch set is not connected");
    for (Vertex v : u) {
      auto [it, fresh] = owner.emplace(v, x);
      if (!fresh)
        structural(rep, set_obj(it->second), set_obj(x),
                   "branch sets share vertex " + std::to_string(v));
    }
  }

  std::unordered_map<Vertex, std::uint32_t> interior_owner;
  std::map<Edge, std::uint32_t> single_edges;
  for (std::uint32_t e = 0; e < m.branch_paths.size(); ++e) {
    const auto& p = m.branch_paths[e];
    auto [x, y] = pat.edges[e];
    if (p.size() < 2) {
      structural(rep, path_obj(e), path_obj(e), "branch path has no edge");
      continue;
    }
    bool ok = true;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!g.has_edge(p[i], p[i + 1])) {
        structural(rep, path_obj(e), path_obj(e),
                   "consecutive vertices " + std::to_string(p[i]) + ", " + std::to_string(p[i + 1]) +
                       " are not adjacent");
        ok = false;
        break;
      }
    std::vector<Vertex> sorted(p);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      structural(rep, path_obj(e), path_obj(e), "branch path repeats a vertex");
      ok = false;
    }
    if (!ok) continue;
    // An end may sit in its branch set or just outside it; an outside end
    // counts as interior for the disjointness rules.
    auto end_state = [&](Vertex v, std::uint32_t want) {
      auto own = owner.find(v);
      if (own != owner.end()) return own->second == want ? 1 : 0;
      for (Vertex w : g.neighbors(v)) {
        auto o = owner.find(w);
        if (o != owner.end() && o->second == want) return 2;
      }
      return 0;
    };
    int fx = end_state(p.front(), x), by = end_state(p.back(), y);
    int fy = end_state(p.front(), y), bx = end_state(p.back(), x);
    bool forward = fx && by, backward = fy && bx;
    if (!forward && !backward) {
      structural(rep, path_obj(e), set_obj(x),
                 "endpoints do not lie in or next to U[" + std::to_string(x) + "] and U[" + std::to_string(y) + "]");
      continue;
    }
    const bool front_outside = forward ? fx == 2 : fy == 2;
    const bool back_outside = forward ? by == 2 : bx == 2;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      auto own = owner.find(p[i]);
      if (own != owner.end())
        structural(rep, path_obj(e), set_obj(own->second),
                   "interior vertex " + std::to_string(p[i]) + " lies in a branch set");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      bool interior = (i > 0 && i + 1 < p.size()) || (i == 0 && front_outside) ||
                      (i + 1 == p.size() && back_outside);
      if (!interior) continue;
      auto [it, fresh] = interior_owner.emplace(p[i], e);
      if (!fresh)
        structural(rep, path_obj(it->second), path_obj(e),
                   "branch paths share interior vertex " + std::to_string(p[i]));
    }
    if (p.size() == 2) {
      Edge key{std::min(p[0], p[1]), std::max(p[0], p[1])};
      auto [it, fresh] = single_edges.emplace(key, e);
      if (!fresh) structural(rep, path_obj(it->second), path_obj(e), "branch paths use the same edge");
    }
  }
  // An interior vertex of one path may not appear anywhere on another path.
  for (std::uint32_t e = 0; e < m.branch_paths.size(); ++e) {
    const auto& p = m.branch_paths[e];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i > 0 && i + 1 < p.size()) continue;
      auto it = interior_owner.find(p[i]);
      if (it != interior_owner.end() && it->second != e)
        structural(rep, path_obj(it->second), path_obj(e),
                   "endpoint " + std::to_string(p[i]) + " is interior to another branch path");
    }
  }
  return true;
}

}  // namespace

FatnessReport verify_fat_model(const Graph& g, const FatModel& m, Distance k) {
  FatnessReport rep;
  bool in_range = check_structure(g, m, rep);
  if (in_range && k > 0) {
    // Objects: branch sets first, then branch paths.
    std::vector<std::vector<Vertex>> objects;
    std::vector<ModelObject> ids;
    for (std::uint32_t x = 0; x < m.branch_sets.size(); ++x) {
      objects.push_back(m.branch_sets[x].vector());
      ids.push_back(set_obj(x));
    }
    for (std::uint32_t e = 0; e < m.branch_paths.size(); ++e) {
      objects.push_back(m.branch_paths[e]);
      ids.push_back(path_obj(e));
    }
    const std::size_t sets = m.branch_sets.size();
    auto exempt = [&](std::size_t a, std::size_t b) {
      if (a > b) std::swap(a, b);
      if (a >= sets || b < sets) return false;
      auto [x, y] = m.pattern.edges[b - sets];
      return a == x || a == y;
    };
    std::unordered_map<Vertex, std::vector<std::uint32_t>> holders;
    for (std::uint32_t i = 0; i < objects.size(); ++i)
      for (Vertex v : objects[i]) holders[v].push_back(i);

    WorkspaceLease ws;
    std::vector<Distance> best(objects.size());
    for (std::uint32_t a = 0; a < objects.size(); ++a) {
      if (objects[a].empty()) continue;
      std::fill(best.begin(), best.end(), kInfinity);
      bfs(g, objects[a], k - 1, kAllVertices, *ws);
      for (Vertex v : ws->order()) {
        auto it = holders.find(v);
        if (it == holders.end()) continue;
        for (auto b : it->second)
          if (b > a && !exempt(a, b)) best[b] = std::min(best[b], ws->dist(v));
      }
      for (std::uint32_t b = a + 1; b < objects.size(); ++b)
        if (best[b] < k) {
          Violation v;
          v.kind = Violation::Kind::Distance;
          v.first = ids[a];
          v.second = ids[b];
          v.required = k;
          v.actual = best[b];
          v.detail = describe(ids[a]) + " and " + describe(ids[b]) + " are at distance " +
                     std::to_string(best[b]) + " < " + std::to_string(k);
          rep.violations.push_back(std::move(v));
        }
    }
  }
  std::stable_sort(rep.violations.begin(), rep.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     if (a.first != b.first) return a.first < b.first;
                     return a.second < b.second;
                   });
  rep.valid = rep.violations.empty();
  return rep;
}

// ---- subdivision -------------------------------------------------------

FatModel subdivide_model(const Graph& g, const FatModel& m, Distance k) {
  if (k > kInfinity / 4) throw ModelError("fatness too large");
  auto pre = verify_fat_model(g, m, 3 * k);
  if (!pre.valid) throw ModelError("input is not " + std::to_string(3 * k) + "-fat: " + pre.violations.front().detail);

  const auto& j = m.pattern;
  FatModel out;
  out.pattern = PatternGraph::subdivided(j);
  out.claimed_fatness = k;
  out.branch_sets = m.branch_sets;
  out.branch_sets.resize(out.pattern.vertex_count);
  out.branch_paths.resize(out.pattern.edges.size());

  for (std::uint32_t e = 0; e < j.edges.size(); ++e) {
    auto [x, y] = j.edges[e];
    const auto& ux = m.branch_sets[x];
    const auto& uy = m.branch_sets[y];
    auto near = [&](const VertexSet& u, Vertex v) {
      if (u.contains(v)) return true;
      for (Vertex w : g.neighbors(v))
        if (u.contains(w)) return true;
      return false;
    };
    std::vector<Vertex> p = m.branch_paths[e];
    if (!(near(ux, p.front()) && near(uy, p.back()))) std::reverse(p.begin(), p.end());
    // Ends that stop next to their branch set get one more edge into it.
    auto step_in = [&](const VertexSet& u, Vertex v) {
      for (Vertex w : g.neighbors(v))
        if (u.contains(w)) return w;
      return kNoVertex;
    };
    if (!ux.contains(p.front())) p.insert(p.begin(), step_in(ux, p.front()));
    if (!uy.contains(p.back())) p.push_back(step_in(uy, p.back()));
    const std::uint32_t w = j.vertex_count + e;

    if (k == 0) {
      // Plain minor: the path interior becomes the new branch set.
      if (p.size() < 3)
        throw ModelError("branch path " + describe({ModelObject::Kind::BranchPath, e}) +
                         " has no interior vertex to host the subdivision vertex");
      out.branch_sets[w] = VertexSet::from_unsorted(std::vector<Vertex>(p.begin() + 1, p.end() - 1));
      out.branch_paths[2 * e] = {p[0], p[1]};
      out.branch_paths[2 * e + 1] = {p[p.size() - 2], p.back()};
      continue;
    }

    WorkspaceLease from_x, from_y;
    bfs(g, ux.members(), k, kAllVertices, *from_x);
    bfs(g, uy.members(), k, kAllVertices, *from_y);
    std::size_t ui = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (from_x->dist(p[i]) <= k) ui = i;
    std::size_t vi = ui + 1;
    while (vi < p.size() && from_y->dist(p[vi]) > k) ++vi;
    if (vi >= p.size()) throw ModelError("could not locate the subdivision segment");

    out.branch_sets[w] = VertexSet::from_unsorted(std::vector<Vertex>(p.begin() + ui, p.begin() + vi + 1));
    auto to_x = trace_to_source(*from_x, p[ui]);  // p[ui] ... U_x
    std::reverse(to_x.begin(), to_x.end());
    out.branch_paths[2 * e] = std::move(to_x);
    out.branch_paths[2 * e + 1] = trace_to_source(*from_y, p[vi]);  // p[vi] ... U_y
  }
  return out;
}

}  // namespace coarse_minor
