#include <coarse_minor/bfs.hpp>
#include <coarse_minor/minor_check.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace coarse_minor {

std::string to_string(MinorResult::Answer a) {
  switch (a) {
    case MinorResult::Answer::Yes: return "yes";
    case MinorResult::Answer::No: return "no";
    case MinorResult::Answer::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

struct PatternInfo {
  std::uint32_t p = 0;
  std::vector<std::vector<std::uint32_t>> mult;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> demands;  // x < y with mult > 0
  std::vector<std::uint32_t> twin_prev;  // previous member of the twin class, or p
  bool connected = false;
  bool two_connected = false;
  std::size_t edge_count = 0;
};

PatternInfo analyse(const PatternGraph& j) {
  PatternInfo info;
  const std::uint32_t p = j.vertex_count;
  info.p = p;
  info.edge_count = j.edges.size();
  info.mult.assign(p, std::vector<std::uint32_t>(p, 0));
  std::vector<Edge> simple;
  for (auto [x, y] : j.edges) {
    if (info.mult[x][y]++ == 0) simple.emplace_back(x, y);
    info.mult[y][x] = info.mult[x][y];
  }
  for (std::uint32_t x = 0; x < p; ++x)
    for (std::uint32_t y = x + 1; y < p; ++y)
      if (info.mult[x][y]) info.demands.emplace_back(x, y);
  Graph u(p, simple);
  info.connected = p > 0 && is_connected(u);
  if (p == 2)
    info.two_connected = info.mult[0][1] >= 2;
  else
    info.two_connected = p >= 3 && is_two_connected(u);

  info.twin_prev.assign(p, p);
  for (std::uint32_t y = 0; y < p; ++y)
    for (std::uint32_t x = y; x-- > 0;) {
      bool twins = true;
      for (std::uint32_t z = 0; z < p && twins; ++z)
        if (z != x && z != y && info.mult[x][z] != info.mult[y][z]) twins = false;
      if (twins) {
        info.twin_prev[y] = x;
        break;
      }
    }
  return info;
}

// A piece of the host with long threads of degree-2 vertices cut down. Each
// reduced vertex stands for a run of piece vertices; runs partition the piece.
struct Reduced {
  Graph graph;
  std::vector<std::vector<Vertex>> runs;  // reduced vertex -> host vertices
};

Reduced reduce_piece(const Graph& host, const VertexSet& piece, std::size_t keep) {
  const auto& members = piece.members();
  const std::size_t n = members.size();
  auto local = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
  };
  std::vector<std::vector<Vertex>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex w : host.neighbors(members[i]))
      if (piece.contains(w)) adj[i].push_back(local(w));

  std::vector<Vertex> rep(n);
  for (std::size_t i = 0; i < n; ++i) rep[i] = static_cast<Vertex>(i);
  std::vector<std::uint8_t> seen(n, 0);
  auto walk = [&](Vertex start, Vertex first) {
    std::vector<Vertex> interior;
    Vertex prev = start, cur = first;
    while (adj[cur].size() == 2 && !seen[cur] && cur != start) {
      seen[cur] = 1;
      interior.push_back(cur);
      Vertex next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    }
    if (interior.size() > keep)
      for (std::size_t i = keep; i < interior.size(); ++i) rep[interior[i]] = interior[keep - 1];
  };
  for (std::size_t a = 0; a < n; ++a)
    if (adj[a].size() != 2)
      for (Vertex w : adj[a]) walk(static_cast<Vertex>(a), w);
  // What is left unseen among degree-2 vertices forms pure cycles.
  for (std::size_t a = 0; a < n; ++a)
    if (adj[a].size() == 2 && !seen[a]) {
      seen[a] = 1;
      walk(static_cast<Vertex>(a), adj[a][0]);
    }

  std::vector<Vertex> id(n, kNoVertex);
  Reduced out;
  for (std::size_t i = 0; i < n; ++i)
    if (rep[i] == i) {
      id[i] = static_cast<Vertex>(out.runs.size());
      out.runs.emplace_back();
    }
  for (std::size_t i = 0; i < n; ++i) out.runs[id[rep[i]]].push_back(members[i]);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex w : adj[i]) {
      Vertex a = id[rep[i]], b = id[rep[w]];
      if (a < b) edges.emplace_back(a, b);
    }
  out.graph = Graph(out.runs.size(), edges);
  return out;
}

class BudgetExhausted {};

class Search {
 public:
  Search(const Graph& g, const PatternInfo& pat, std::uint64_t& nodes, const MinorBudget& budget,
         std::chrono::steady_clock::time_point start)
      : g_(g), pat_(pat), nodes_(nodes), budget_(budget), start_(start) {
    const std::size_t n = g.vertex_count();
    const std::uint32_t p = pat.p;
    // BFS order from the smallest vertex, restarted for each component.
    std::vector<std::uint8_t> in(n, 0);
    for (Vertex s = 0; s < n; ++s) {
      if (in[s]) continue;
      std::size_t head = order_.size();
      order_.push_back(s);
      in[s] = 1;
      for (; head < order_.size(); ++head)
        for (Vertex w : g.neighbors(order_[head]))
          if (!in[w]) {
            in[w] = 1;
            order_.push_back(w);
          }
    }
    label_.assign(n, kUndecided);
    pending_.resize(n);
    for (Vertex v = 0; v < n; ++v) pending_[v] = static_cast<std::uint32_t>(g.degree(v));
    size_.assign(p, 0);
    closed_.assign(p, 0);
    between_.assign(p, std::vector<std::uint32_t>(p, 0));
    to_undecided_.assign(p, 0);
    undecided_edges_ = g.edge_count();
    stamp_.assign(n, 0);
  }

  bool run() { return descend(0); }
  const std::vector<int>& labels() const { return label_; }

 private:
  static constexpr int kUndecided = -2;
  static constexpr int kNone = -1;

  void tick() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) throw BudgetExhausted{};
    if (budget_.max_seconds > 0 && (nodes_ & 0xfff) == 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() > budget_.max_seconds) throw BudgetExhausted{};
    }
  }

  // Component of U_x through v; returns size and whether it still has an undecided neighbor.
  std::pair<std::size_t, bool> component(Vertex v, int x) {
    ++gen_;
    std::vector<Vertex>& q = queue_;
    q.clear();
    q.push_back(v);
    stamp_[v] = gen_;
    bool open = false;
    for (std::size_t h = 0; h < q.size(); ++h) {
      Vertex a = q[h];
      if (pending_[a] > 0) open = true;
      for (Vertex w : g_.neighbors(a))
        if (label_[w] == x && stamp_[w] != gen_) {
          stamp_[w] = gen_;
          q.push_back(w);
        }
    }
    return {q.size(), open};
  }

  void assign(Vertex v, int x) {
    label_[v] = x;
    for (Vertex w : g_.neighbors(v)) {
      --pending_[w];
      int y = label_[w];
      if (y == kUndecided) {
        --undecided_edges_;
        if (x >= 0) ++to_undecided_[x];
      } else if (y >= 0) {
        --to_undecided_[y];
        if (x >= 0 && x != y) {
          ++between_[x][y];
          ++between_[y][x];
        }
      }
    }
    if (x >= 0) ++size_[x];
  }

  void unassign(Vertex v) {
    int x = label_[v];
    for (Vertex w : g_.neighbors(v)) {
      ++pending_[w];
      int y = label_[w];
      if (y == kUndecided) {
        ++undecided_edges_;
        if (x >= 0) --to_undecided_[x];
      } else if (y >= 0) {
        ++to_undecided_[y];
        if (x >= 0 && x != y) {
          --between_[x][y];
          --between_[y][x];
        }
      }
    }
    if (x >= 0) --size_[x];
    label_[v] = kUndecided;
  }

  // Closed components created by deciding v. Returns false on a dead end and
  // records the sets that became closed so the caller can undo.
  bool settle(Vertex v, std::vector<int>& newly_closed) {
    auto check = [&](Vertex a) {
      int x = label_[a];
      if (x < 0 || pending_[a] != 0) return true;
      auto [sz, open] = component(a, x);
      if (open) return true;
      if (sz != size_[x]) return false;
      if (!closed_[x]) {
        closed_[x] = 1;
        newly_closed.push_back(x);
      }
      return true;
    };
    if (!check(v)) return false;
    for (Vertex w : g_.neighbors(v))
      if (pending_[w] == 0 && !check(w)) return false;
    return true;
  }

  bool feasible(std::size_t remaining) const {
    std::size_t empty = 0;
    for (std::uint32_t x = 0; x < pat_.p; ++x) empty += size_[x] == 0;
    if (empty > remaining) return false;
    for (auto [x, y] : pat_.demands) {
      std::uint64_t bound = std::uint64_t{between_[x][y]} + to_undecided_[x] + to_undecided_[y] + undecided_edges_;
      if (bound < pat_.mult[x][y]) return false;
    }
    return true;
  }

  bool complete() {
    for (std::uint32_t x = 0; x < pat_.p; ++x)
      if (size_[x] == 0) return false;
    for (auto [x, y] : pat_.demands)
      if (between_[x][y] < pat_.mult[x][y]) return false;
    for (std::uint32_t x = 0; x < pat_.p; ++x) {
      if (closed_[x]) continue;
      Vertex any = kNoVertex;
      for (Vertex v : order_)
        if (label_[v] == static_cast<int>(x)) {
          any = v;
          break;
        }
      if (component(any, static_cast<int>(x)).first != size_[x]) return false;
    }
    return true;
  }

  bool descend(std::size_t pos) {
    tick();
    if (complete()) {
      for (std::size_t i = pos; i < order_.size(); ++i) label_[order_[i]] = kNone;
      return true;
    }
    if (pos == order_.size()) return false;
    Vertex v = order_[pos];
    const std::size_t remaining = order_.size() - pos - 1;
    for (int x = 0; x <= static_cast<int>(pat_.p); ++x) {
      int choice = x == static_cast<int>(pat_.p) ? kNone : x;
      if (choice >= 0) {
        if (closed_[choice]) continue;
        std::uint32_t prev = pat_.twin_prev[choice];
        if (size_[choice] == 0 && prev != pat_.p && size_[prev] == 0) continue;
      }
      assign(v, choice);
      std::vector<int> newly_closed;
      bool ok = settle(v, newly_closed) && feasible(remaining);
      if (ok && descend(pos + 1)) return true;
      for (int c : newly_closed) closed_[c] = 0;
      unassign(v);
    }
    return false;
  }

  const Graph& g_;
  const PatternInfo& pat_;
  std::uint64_t& nodes_;
  const MinorBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Vertex> order_;
  std::vector<int> label_;
  std::vector<std::uint32_t> pending_;
  std::vector<std::size_t> size_;
  std::vector<std::uint8_t> closed_;
  std::vector<std::vector<std::uint32_t>> between_;
  std::vector<std::uint64_t> to_undecided_;
  std::uint64_t undecided_edges_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t gen_ = 0;
  std::vector<Vertex> queue_;
};

FatModel certificate(const Graph& host, const PatternGraph& pattern, std::vector<std::vector<Vertex>> sets) {
  FatModel m;
  m.pattern = pattern;
  m.claimed_fatness = 0;
  std::vector<std::uint32_t> owner(host.vertex_count(), pattern.vertex_count);
  for (std::uint32_t x = 0; x < sets.size(); ++x)
    for (Vertex v : sets[x]) owner[v] = x;
  for (auto& s : sets) m.branch_sets.push_back(VertexSet::from_unsorted(std::move(s)));
  // Host edges between each pair of sets, in ascending order, handed out to
  // the parallel pattern edges one by one.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Edge>> pool;
  for (auto [a, b] : host.edges()) {
    std::uint32_t x = owner[a], y = owner[b];
    if (x == pattern.vertex_count || y == pattern.vertex_count || x == y) continue;
    pool[{std::min(x, y), std::max(x, y)}].emplace_back(a, b);
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> used;
  for (auto [x, y] : pattern.edges) {
    auto key = std::make_pair(std::min(x, y), std::max(x, y));
    Edge e = pool.at(key).at(used[key]++);
    if (owner[e.first] == x)
      m.branch_paths.push_back({e.first, e.second});
    else
      m.branch_paths.push_back({e.second, e.first});
  }
  return m;
}

}  // namespace

MinorResult has_minor(const MinorQuery& q) {
  if (q.host == nullptr) throw std::invalid_argument("minor query without a host graph");
  if (q.budget.max_nodes == 0) throw std::invalid_argument("minor search budget must be positive");
  q.pattern.validate();
  if (q.pattern.vertex_count > q.max_pattern_vertices)
    throw std::invalid_argument("pattern has " + std::to_string(q.pattern.vertex_count) +
                                " vertices; the limit is " + std::to_string(q.max_pattern_vertices));
  const Graph& g = *q.host;
  const PatternInfo pat = analyse(q.pattern);
  MinorResult result;

  if (q.density_prefilter && q.pattern.name.rfind("k2t:", 0) == 0 && g.vertex_count() > 0) {
    // More than (t+1)(n-1)/2 edges forces a K_{2,t} minor.
    double t = q.pattern.vertex_count - 2.0;
    double bound = (t + 1) * (static_cast<double>(g.vertex_count()) - 1) / 2;
    result.hint = static_cast<double>(g.edge_count()) > bound ? "dense: minor expected" : "sparse: inconclusive";
  }

  if (pat.p == 0) {
    result.answer = MinorResult::Answer::Yes;
    result.certificate = FatModel{q.pattern, {}, {}, 0};
    return result;
  }

  std::vector<VertexSet> pieces;
  if (pat.two_connected) {
    for (auto& b : blocks_of(g).blocks)
      if (b.size() >= 2) pieces.push_back(b);
  } else if (pat.connected) {
    for (auto& c : components_with_boundary(g, VertexSet{})) pieces.push_back(c.component);
  } else {
    std::vector<Vertex> all(g.vertex_count());
    for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
    pieces.push_back(VertexSet::from_sorted(std::move(all)));
  }

  const auto start = std::chrono::steady_clock::now();
  bool exhausted = false;
  for (const auto& piece : pieces) {
    if (piece.size() < pat.p) continue;
    std::size_t m = 0;
    for (Vertex v : piece)
      for (Vertex w : g.neighbors(v)) m += (v < w && piece.contains(w));
    if (m < pat.edge_count) continue;
    // Cycle rank never grows under taking minors.
    if (pat.connected && m + pat.p < pat.edge_count + piece.size()) continue;

    Reduced red = reduce_piece(g, piece, 2 * pat.p + 3);
    Search search(red.graph, pat, result.nodes_explored, q.budget, start);
    bool found = false;
    try {
      found = search.run();
    } catch (const BudgetExhausted&) {
      exhausted = true;
      break;
    }
    if (!found) continue;
    std::vector<std::vector<Vertex>> sets(pat.p);
    const auto& labels = search.labels();
    for (Vertex r = 0; r < red.runs.size(); ++r)
      if (labels[r] >= 0) sets[labels[r]].insert(sets[labels[r]].end(), red.runs[r].begin(), red.runs[r].end());
    result.answer = MinorResult::Answer::Yes;
    result.certificate = certificate(g, q.pattern, std::move(sets));
    return result;
  }
  result.answer = exhausted ? MinorResult::Answer::Unknown : MinorResult::Answer::No;
  return result;
}

}  // namespace coarse_minor
