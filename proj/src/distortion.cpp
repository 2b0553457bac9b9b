#include <coarse_minor/bfs.hpp>
#include <coarse_minor/distortion.hpp>

#include <algorithm>
#include <cstdio>
#include <future>
#include <map>
#include <set>

namespace coarse_minor {

std::string to_string(Attempt::Outcome o) {
  switch (o) {
    case Attempt::Outcome::Success: return "success";
    case Attempt::Outcome::Failure: return "failure";
    case Attempt::Outcome::Unknown: return "unknown";
    case Attempt::Outcome::Error: return "error";
  }
  return "error";
}

StarAugmented star_augment(const Graph& h, const std::vector<NodeId>& phi) {
  std::vector<std::vector<Vertex>> pre(h.vertex_count());
  for (Vertex v = 0; v < phi.size(); ++v) {
    h.check_vertex(phi[v]);
    pre[phi[v]].push_back(v);
  }
  StarAugmented out;
  out.phi = phi;
  auto edges = h.edges();
  std::size_t next = h.vertex_count();
  for (NodeId x = 0; x < pre.size(); ++x)
    for (std::size_t i = 1; i < pre[x].size(); ++i) {
      edges.emplace_back(x, static_cast<Vertex>(next));
      out.phi[pre[x][i]] = static_cast<NodeId>(next++);
    }
  out.leaves_added = next - h.vertex_count();
  out.h = Graph(next, edges);
  return out;
}

FatModel compose_models(const FatModel& j_model, const FatModel& inner, Distance fatness) {
  const auto& jp = j_model.pattern;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> edge_index;
  for (std::size_t f = 0; f < jp.edges.size(); ++f) {
    auto [a, b] = jp.edges[f];
    edge_index[{std::min(a, b), std::max(a, b)}] = f;
  }
  std::vector<std::uint32_t> owner(jp.vertex_count, inner.pattern.vertex_count);
  for (std::uint32_t y = 0; y < inner.branch_sets.size(); ++y)
    for (Vertex x : inner.branch_sets[y]) {
      if (x >= jp.vertex_count) throw ModelError("inner model uses a vertex outside J");
      owner[x] = y;
    }
  FatModel out;
  out.pattern = inner.pattern;
  out.claimed_fatness = fatness;
  std::vector<std::vector<Vertex>> sets(inner.branch_sets.size());
  for (std::uint32_t x = 0; x < jp.vertex_count; ++x)
    if (owner[x] != inner.pattern.vertex_count) {
      auto& s = sets[owner[x]];
      s.insert(s.end(), j_model.branch_sets[x].begin(), j_model.branch_sets[x].end());
    }
  for (std::size_t f = 0; f < jp.edges.size(); ++f) {
    auto [a, b] = jp.edges[f];
    if (owner[a] == owner[b] && owner[a] != inner.pattern.vertex_count) {
      auto& s = sets[owner[a]];
      s.insert(s.end(), j_model.branch_paths[f].begin(), j_model.branch_paths[f].end());
    }
  }
  for (auto& s : sets) out.branch_sets.push_back(VertexSet::from_unsorted(std::move(s)));
  for (const auto& path : inner.branch_paths) {
    if (path.size() != 2) throw ModelError("composition needs single-edge inner branch paths");
    Vertex a = path.front(), b = path.back();
    auto it = edge_index.find({std::min(a, b), std::max(a, b)});
    if (it == edge_index.end()) throw ModelError("inner branch path is not an edge of J");
    auto p = j_model.branch_paths[it->second];
    if (jp.edges[it->second].first != a) std::reverse(p.begin(), p.end());
    out.branch_paths.push_back(std::move(p));
  }
  return out;
}

namespace {

// Edge-minimal subgraph of H (node ids) that still has the pattern as a minor.
std::vector<std::pair<NodeId, NodeId>> minimal_subgraph(const Graph& h, const FatModel& cert,
                                                        const MinorBudget& budget, std::uint64_t& nodes) {
  std::set<Edge> keep;
  for (const auto& s : cert.branch_sets) {
    WorkspaceLease ws;
    Vertex root = s.min();
    bfs(h, std::span<const Vertex>(&root, 1), kInfinity - 1, [&](Vertex v) { return s.contains(v); }, *ws);
    for (Vertex v : ws->order())
      if (v != root) keep.insert({std::min(v, ws->parent(v)), std::max(v, ws->parent(v))});
  }
  for (const auto& p : cert.branch_paths)
    for (std::size_t i = 0; i + 1 < p.size(); ++i) keep.insert({std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])});

  std::vector<Edge> current(keep.begin(), keep.end());
  for (std::size_t i = 0; i < current.size();) {
    std::vector<Edge> trial;
    for (std::size_t j = 0; j < current.size(); ++j)
      if (j != i) trial.push_back(current[j]);
    Graph sub(h.vertex_count(), trial);
    MinorQuery q;
    q.host = &sub;
    q.pattern = cert.pattern;
    q.budget = budget;
    auto r = has_minor(q);
    nodes += r.nodes_explored;
    if (r.answer == MinorResult::Answer::Yes)
      current = std::move(trial);
    else
      ++i;
  }
  return {current.begin(), current.end()};
}

Attempt run_attempt(const Graph& g, const DistortionOptions& o, std::uint64_t k) {
  Attempt a;
  a.k = k;
  try {
    a.profile = o.mode == ProfileMode::Scaled ? scaled_profile(o.t, 3 * k, o.scaled)
                                               : compute_constants(o.t, 3 * k, ProfileMode::PaperExact);
    BuildOptions bo;
    bo.root = o.root;
    BuildOutcome built = build_partition(g, a.profile, bo);
    const PatternGraph k2t = PatternGraph::k2t(o.t);
    if (built.kind == BuildOutcome::Kind::Witness) {
      a.outcome = Attempt::Outcome::Failure;
      a.provenance = "theta-finder:" + built.witness_rule;
      a.witness = subdivide_model(g, *built.witness, static_cast<Distance>(k));
      a.witness->pattern = k2t;
    } else {
      const LayeredPartition& lp = *built.partition;
      Graph h = lp.quotient();
      a.h_nodes = h.vertex_count();
      a.h_edges = h.edge_count();
      MinorQuery q;
      q.host = &h;
      q.pattern = k2t;
      q.budget = o.minor_budget;
      MinorResult r = has_minor(q);
      a.minor_nodes = r.nodes_explored;
      a.provenance = "minor-check";
      if (r.answer == MinorResult::Answer::Unknown) {
        a.outcome = Attempt::Outcome::Unknown;
        a.note = "minor search budget exhausted";
      } else if (r.answer == MinorResult::Answer::No) {
        a.outcome = Attempt::Outcome::Success;
        a.partition = lp;
      } else {
        auto j_edges = minimal_subgraph(h, *r.certificate, o.minor_budget, a.minor_nodes);
        PartitionReport verified = verify_partition(g, lp, a.profile);
        FatModel j_model = extract_fat_model(g, lp, a.profile, j_edges, &verified);
        // The J model numbers J's nodes in ascending order; rebuild J on that numbering.
        std::vector<NodeId> nodes;
        for (auto [x, y] : j_edges) {
          nodes.push_back(x);
          nodes.push_back(y);
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        auto local = [&](NodeId x) {
          return static_cast<Vertex>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
        };
        std::vector<Edge> jl;
        for (auto [x, y] : j_edges) jl.emplace_back(local(x), local(y));
        Graph j(nodes.size(), jl);
        MinorQuery qj;
        qj.host = &j;
        qj.pattern = k2t;
        qj.budget = o.minor_budget;
        MinorResult rj = has_minor(qj);
        a.minor_nodes += rj.nodes_explored;
        if (rj.answer != MinorResult::Answer::Yes) throw PartitionError("minimal subgraph lost the minor");
        a.outcome = Attempt::Outcome::Failure;
        a.provenance = "extraction";
        a.witness = compose_models(j_model, *rj.certificate, static_cast<Distance>(k));
        a.h_edges = h.edge_count();
        a.note = "J' has " + std::to_string(nodes.size()) + " nodes and " + std::to_string(j_edges.size()) + " edges";
      }
    }
    if (a.witness) {
      auto rep = verify_fat_model(g, *a.witness, static_cast<Distance>(k));
      if (!rep.valid) {
        a.outcome = Attempt::Outcome::Error;
        a.note = "witness failed verification: " + rep.violations.front().detail;
        a.witness.reset();
      }
    }
  } catch (const std::exception& e) {
    a.outcome = Attempt::Outcome::Error;
    a.partition.reset();
    a.witness.reset();
    a.note = e.what();
  }
  return a;
}

// Next K the schedule wants given the results so far; nullopt when finished.
std::optional<std::uint64_t> next_query(const std::map<std::uint64_t, bool>& known, std::uint64_t max_k,
                                        bool exhaustive) {
  auto lookup = [&](std::uint64_t k) -> std::optional<bool> {
    auto it = known.find(k);
    if (it == known.end()) return std::nullopt;
    return it->second;
  };
  if (exhaustive) {
    for (std::uint64_t k = 1; k <= max_k; ++k) {
      auto r = lookup(k);
      if (!r) return k;
      if (*r) return std::nullopt;
    }
    return std::nullopt;
  }
  std::uint64_t lo = 0, k = 1;
  while (true) {
    auto r = lookup(k);
    if (!r) return k;
    if (*r) break;
    if (k == max_k) return std::nullopt;
    lo = k;
    k = std::min(2 * k, max_k);
  }
  std::uint64_t hi = k;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    auto r = lookup(mid);
    if (!r) return mid;
    (*r ? hi : lo) = mid;
  }
  return std::nullopt;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

DistortionReport approximate_distortion(const Graph& g, const DistortionOptions& o) {
  if (o.t < 3) throw PartitionError("t must be at least 3");
  if (g.vertex_count() == 0) throw PartitionError("graph is empty");
  if (!is_connected(g)) throw PartitionError("graph is disconnected; run each component separately");
  const std::uint64_t max_k = o.max_k == 0 ? g.vertex_count() : std::min<std::uint64_t>(o.max_k, g.vertex_count());
  const unsigned jobs = std::max(1u, o.jobs);

  std::map<std::uint64_t, Attempt> cache;
  std::map<std::uint64_t, bool> known;
  while (auto q = next_query(known, max_k, o.exhaustive)) {
    // Speculate over both outcomes of pending queries to fill the job slots.
    std::vector<std::uint64_t> batch{*q};
    std::vector<std::map<std::uint64_t, bool>> frontier{known};
    for (std::size_t head = 0; head < frontier.size() && batch.size() < jobs; ++head) {
      auto nq = next_query(frontier[head], max_k, o.exhaustive);
      if (!nq) continue;
      if (std::find(batch.begin(), batch.end(), *nq) == batch.end()) batch.push_back(*nq);
      for (bool outcome : {false, true}) {
        auto f = frontier[head];
        f[*nq] = outcome;
        frontier.push_back(std::move(f));
      }
    }
    if (batch.size() > jobs) batch.resize(jobs);
    std::vector<std::future<Attempt>> running;
    for (std::uint64_t k : batch)
      running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                   [&g, &o, k] { return run_attempt(g, o, k); }));
    for (std::size_t i = 0; i < batch.size(); ++i) cache.emplace(batch[i], running[i].get());
    // Replay the sequential schedule over everything computed so far.
    while (auto step = next_query(known, max_k, o.exhaustive)) {
      auto it = cache.find(*step);
      if (it == cache.end()) break;
      known[*step] = it->second.outcome == Attempt::Outcome::Success;
    }
  }

  DistortionReport rep;
  rep.t = o.t;
  rep.paranoid = o.paranoid;
  for (auto [k, ok] : known) {
    rep.attempts.push_back(std::move(cache.at(k)));
    if (ok && rep.k_min == 0) rep.k_min = k;
  }
  for (const auto& a : rep.attempts) {
    if (a.outcome == Attempt::Outcome::Unknown)
      rep.warnings.push_back("K=" + std::to_string(a.k) + ": minor check inconclusive (budget)");
    if (a.outcome == Attempt::Outcome::Error)
      rep.warnings.push_back("K=" + std::to_string(a.k) + ": " + a.note);
  }
  if (rep.k_min == 0) {
    rep.warnings.push_back("no attempt succeeded up to K=" + std::to_string(max_k));
    return rep;
  }

  const Attempt* best = nullptr;
  for (const auto& a : rep.attempts) {
    if (a.k == rep.k_min) best = &a;
    if (a.k + 1 == rep.k_min && a.witness) rep.lower_bound_witness = a.witness;
  }
  if (rep.k_min > 1 && !rep.lower_bound_witness)
    rep.warnings.push_back("attempt K_min - 1 produced no witness; lower bound not certified");

  const LayeredPartition& lp = *best->partition;
  rep.qi_h = quasi_isometry(g, lp, o.qi);
  rep.embedding = star_augment(lp.quotient(), lp.node_of);
  rep.qi_augmented = check_embedding(g, rep.embedding->h, rep.embedding->phi, rep.qi_h->R, o.qi, 2);
  rep.measured_M = std::max(rep.qi_augmented->worst_expansion, rep.qi_augmented->worst_contraction);
  rep.measured_A = rep.qi_h->R;
  rep.bracket = "[c*" + std::to_string(rep.k_min - 1) + ", " +
                format_number(rep.measured_M * static_cast<double>(rep.k_min)) + "]";

  if (o.paranoid) {
    auto fail = [&](std::string s) { rep.paranoid_failures.push_back(std::move(s)); };
    const PatternGraph k2t = PatternGraph::k2t(o.t);
    for (const auto& a : rep.attempts) {
      const std::string tag = "K=" + std::to_string(a.k) + ": ";
      if (a.outcome == Attempt::Outcome::Success) {
        auto pr = verify_partition(g, *a.partition, a.profile);
        if (!pr.valid) fail(tag + "partition check " + pr.violations.front().check);
        Graph h = a.partition->quotient();
        MinorQuery q;
        q.host = &h;
        q.pattern = k2t;
        q.budget = o.minor_budget;
        if (has_minor(q).answer != MinorResult::Answer::No) fail(tag + "H is not confirmed minor-free");
      }
      if (a.outcome == Attempt::Outcome::Failure) {
        if (!a.witness) {
          fail(tag + "failure without witness");
        } else {
          if (!(a.witness->pattern == k2t)) fail(tag + "witness pattern is not K_{2,t}");
          if (!verify_fat_model(g, *a.witness, static_cast<Distance>(a.k)).valid) fail(tag + "witness not K-fat");
        }
      }
    }
    if (!rep.qi_h->valid()) fail("embedding into H violates the quasi-isometry inequalities");
    std::vector<std::uint8_t> hit(rep.embedding->h.vertex_count(), 0);
    for (NodeId x : rep.embedding->phi)
      if (hit[x]++) fail("augmented map is not injective");
  }
  return rep;
}

}  // namespace coarse_minor
