#include <coarse_minor/generators.hpp>
#include <coarse_minor/minor_check.hpp>

#include "../oracles/minor_oracle.hpp"

#include <doctest.h>

using namespace coarse_minor;

namespace {

MinorResult ask(const Graph& g, const PatternGraph& p, std::uint64_t nodes = 200'000'000) {
  MinorQuery q;
  q.host = &g;
  q.pattern = p;
  q.budget.max_nodes = nodes;
  auto r = has_minor(q);
  if (r.answer == MinorResult::Answer::Yes) {
    REQUIRE(r.certificate.has_value());
    CHECK(verify_fat_model(g, *r.certificate, 0).valid);
  }
  return r;
}

bool yes(const Graph& g, const PatternGraph& p) { return ask(g, p).answer == MinorResult::Answer::Yes; }

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph without_vertex(const Graph& g, Vertex x) {
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != x) keep.push_back(v);
  return g.induced(VertexSet::from_sorted(keep));
}

}  // namespace

TEST_SUITE("minor-check") {

TEST_CASE("small examples") {
  CHECK(yes(cycle_graph(4), PatternGraph::k2t(2)));
  CHECK_FALSE(yes(random_tree(40, 3), PatternGraph::theta(2)));
  CHECK(yes(cycle_graph(3), PatternGraph::theta(2)));
  CHECK_FALSE(yes(complete(4), PatternGraph::k2t(3)));
  CHECK(yes(complete(5), PatternGraph::k2t(3)));
  CHECK_FALSE(yes(cycle_graph(50), PatternGraph::k2t(3)));
  CHECK(yes(theta_graph(3, 4), PatternGraph::k2t(3)));
  CHECK(yes(theta_graph(3, 4), PatternGraph::theta(3)));
  CHECK_FALSE(yes(theta_graph(3, 4), PatternGraph::theta(4)));
  CHECK(yes(grid_graph(3, 3), PatternGraph::theta(4)));
}

TEST_CASE("large hosts reduce to small blocks") {
  // A long subdivided theta with a tree hanging off it.
  Graph g = theta_graph(3, 400);
  CHECK(yes(g, PatternGraph::k2t(3)));
  CHECK_FALSE(yes(g, PatternGraph::k2t(4)));
  CHECK_FALSE(yes(cycle_graph(5000), PatternGraph::theta(3)));
}

TEST_CASE("budget exhaustion is Unknown") {
  Graph g = grid_graph(5, 5);
  auto r = ask(g, PatternGraph::k2t(6), 10);
  CHECK(r.answer == MinorResult::Answer::Unknown);
  CHECK_FALSE(r.certificate.has_value());
}

TEST_CASE("bad queries") {
  Graph g = cycle_graph(5);
  MinorQuery q;
  q.pattern = PatternGraph::k2t(3);
  CHECK_THROWS(has_minor(q));
  q.host = &g;
  q.budget.max_nodes = 0;
  CHECK_THROWS(has_minor(q));
  q.budget.max_nodes = 100;
  q.pattern = PatternGraph::k2t(11);
  CHECK_THROWS(has_minor(q));
}

TEST_CASE("density hint is advisory") {
  Graph g = complete(5);
  MinorQuery q;
  q.host = &g;
  q.pattern = PatternGraph::k2t(3);
  q.density_prefilter = true;
  auto r = has_minor(q);
  CHECK(r.answer == MinorResult::Answer::Yes);
  CHECK_FALSE(r.hint.empty());
}

TEST_CASE("certificates are deterministic") {
  Graph g = gnp_graph(9, 0.5, 3);
  auto a = ask(g, PatternGraph::k2t(3));
  auto b = ask(g, PatternGraph::k2t(3));
  CHECK(a.answer == b.answer);
  if (a.certificate) {
    CHECK(a.certificate->branch_sets == b.certificate->branch_sets);
    CHECK(a.certificate->branch_paths == b.certificate->branch_paths);
  }
}

TEST_CASE("agreement with the exhaustive oracle and monotonicity on random hosts") {
  Rng rng(29);
  const std::vector<PatternGraph> patterns{PatternGraph::k2t(2), PatternGraph::k2t(3), PatternGraph::theta(2),
                                           PatternGraph::theta(3)};
  for (int round = 0; round < 120; ++round) {
    std::size_t n = 4 + rng.below(5);
    Graph g = gnp_graph(n, 0.25 + 0.4 * rng.unit(), 7000 + round);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(u, v);
    for (const auto& p : patterns) {
      std::vector<std::pair<int, int>> pe;
      for (auto [x, y] : p.edges) pe.emplace_back(x, y);
      bool expect = oracle::has_minor_exhaustive(static_cast<int>(n), edges, static_cast<int>(p.vertex_count), pe);
      bool got = yes(g, p);
      CHECK(got == expect);

      // adding an edge keeps a yes; deleting a vertex keeps a no
      Vertex u = rng.below(n), v = rng.below(n);
      if (u != v && !g.has_edge(u, v)) {
        auto more = g.edges();
        more.emplace_back(std::min(u, v), std::max(u, v));
        if (got) CHECK(yes(Graph(n, more), p));
      }
      if (!got) CHECK_FALSE(yes(without_vertex(g, rng.below(n)), p));
    }
  }
}

}  // TEST_SUITE
