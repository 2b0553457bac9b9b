#include <coarse_minor/fat_model.hpp>
#include <coarse_minor/generators.hpp>

#include "../oracles/distances.hpp"
#include "../oracles/fat_models.hpp"

#include <doctest.h>

using namespace coarse_minor;

namespace {

// Vertex of leg i (0-based) at distance j from hub 0 in theta_graph(t, leg).
Vertex leg_vertex(std::size_t leg, std::size_t i, std::size_t j) {
  if (j == 0) return 0;
  if (j == leg) return 1;
  return static_cast<Vertex>(2 + i * (leg - 1) + (j - 1));
}

FatModel theta_middle_model(const Graph& g) {
  FatModel m;
  m.pattern = PatternGraph::theta(3);
  m.branch_sets = {ball(g, {0}, 2), ball(g, {1}, 2)};
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Vertex> p;
    for (std::size_t j = 3; j <= 7; ++j) p.push_back(leg_vertex(10, i, j));
    m.branch_paths.push_back(p);
  }
  m.claimed_fatness = 6;
  return m;
}

oracle::ModelView view_of(const FatModel& m) {
  oracle::ModelView v;
  v.pattern_vertices = static_cast<int>(m.pattern.vertex_count);
  for (auto [x, y] : m.pattern.edges) v.pattern_edges.emplace_back(x, y);
  for (const auto& s : m.branch_sets) v.sets.emplace_back(s.begin(), s.end());
  for (const auto& p : m.branch_paths) v.paths.emplace_back(p.begin(), p.end());
  return v;
}

std::vector<std::pair<int, int>> int_edges(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : g.edges()) out.emplace_back(u, v);
  return out;
}

}  // namespace

TEST_SUITE("fat-model") {

TEST_CASE("pattern constructors") {
  auto th = PatternGraph::theta(4);
  CHECK(th.vertex_count == 2);
  CHECK(th.edges.size() == 4);
  CHECK(th.multiplicity(0, 1) == 4);
  auto k = PatternGraph::k2t(3);
  CHECK(k.vertex_count == 5);
  CHECK(k.edges.size() == 6);
  CHECK(PatternGraph::subdivided(PatternGraph::theta(3)) == k);
  CHECK(PatternGraph::cycle(4).edges.size() == 4);
  CHECK_THROWS_AS(PatternGraph::theta(0), ModelError);
  PatternGraph loop;
  loop.vertex_count = 2;
  loop.edges = {{1, 1}};
  CHECK_THROWS_AS(loop.validate(), ModelError);
}

TEST_CASE("Theta(3,10) middle segments: 6-fat but not 7-fat") {
  Graph g = theta_graph(3, 10);
  auto m = theta_middle_model(g);
  auto ok = verify_fat_model(g, m, 6);
  CHECK(ok.valid);
  CHECK(ok.violations.empty());
  auto bad = verify_fat_model(g, m, 7);
  CHECK_FALSE(bad.valid);
  REQUIRE_FALSE(bad.violations.empty());
  for (const auto& v : bad.violations) {
    CHECK(v.kind == Violation::Kind::Distance);
    CHECK(v.required == 7);
    CHECK(v.actual == 6);
  }

  oracle::Distances dist(static_cast<int>(g.vertex_count()), int_edges(g));
  int smallest = oracle::kInf;
  for (const auto& rec : oracle::measure(dist, view_of(m))) smallest = std::min(smallest, std::get<4>(rec));
  CHECK(smallest == 6);
}

TEST_CASE("zero fatness only checks structure") {
  Graph g = theta_graph(3, 10);
  CHECK(verify_fat_model(g, theta_middle_model(g), 0).valid);
}

TEST_CASE("structural violations are reported, not thrown") {
  Graph g = theta_graph(3, 10);
  auto m = theta_middle_model(g);
  SUBCASE("disconnected branch set") {
    m.branch_sets[0] = VertexSet{0, leg_vertex(10, 0, 2)};
  }
  SUBCASE("overlapping branch sets") {
    m.branch_sets[1] = m.branch_sets[1].unite({0});
  }
  SUBCASE("path is not a path") {
    m.branch_paths[0] = {leg_vertex(10, 0, 3), leg_vertex(10, 0, 5)};
  }
  SUBCASE("path misses its branch sets") {
    m.branch_paths[0] = {leg_vertex(10, 0, 4), leg_vertex(10, 0, 5)};
  }
  SUBCASE("path runs through a non-incident set") {
    m.pattern = PatternGraph::k2t(1);  // 0 - 2 - 1 shape, with the sets shuffled below
    m.branch_sets = {ball(g, {0}, 2), ball(g, {1}, 2), VertexSet{leg_vertex(10, 1, 5)}};
    std::vector<Vertex> long_path;
    for (std::size_t j = 2; j <= 8; ++j) long_path.push_back(leg_vertex(10, 1, j));
    m.branch_paths = {long_path, {leg_vertex(10, 1, 5), leg_vertex(10, 1, 6)}};
  }
  SUBCASE("size mismatch") {
    m.branch_paths.pop_back();
  }
  auto rep = verify_fat_model(g, m, 0);
  CHECK_FALSE(rep.valid);
  CHECK(rep.violations.front().kind == Violation::Kind::Structure);
}

TEST_CASE("subdivide the 6-fat theta into a 2-fat K_{2,3}") {
  Graph g = theta_graph(3, 10);
  auto m = theta_middle_model(g);
  auto out = subdivide_model(g, m, 2);
  CHECK(out.pattern == PatternGraph::k2t(3));
  CHECK(out.claimed_fatness == 2);
  CHECK(verify_fat_model(g, out, 2).valid);
  for (const auto& p : out.branch_paths) CHECK(p.size() == 3);
  CHECK(out.branch_sets[0] == m.branch_sets[0]);
  CHECK(out.branch_sets[1] == m.branch_sets[1]);
}

TEST_CASE("subdivide at zero fatness") {
  Graph g = theta_graph(3, 10);
  FatModel m;
  m.pattern = PatternGraph::theta(3);
  m.branch_sets = {VertexSet{0}, VertexSet{1}};
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Vertex> p;
    for (std::size_t j = 0; j <= 10; ++j) p.push_back(leg_vertex(10, i, j));
    m.branch_paths.push_back(p);
  }
  REQUIRE(verify_fat_model(g, m, 0).valid);
  auto out = subdivide_model(g, m, 0);
  CHECK(out.pattern == PatternGraph::k2t(3));
  CHECK(verify_fat_model(g, out, 0).valid);
}

TEST_CASE("subdivide rejects a model that is not 3k-fat") {
  Graph g = theta_graph(3, 10);
  CHECK_THROWS_AS(subdivide_model(g, theta_middle_model(g), 3), ModelError);
  try {
    subdivide_model(g, theta_middle_model(g), 3);
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("U[") != std::string::npos);
  }
}

TEST_CASE("fatness is monotone and agrees with the oracle on random models") {
  Rng rng(5);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    Graph g = gnp_graph(9, 0.35, 900 + round);
    std::vector<std::vector<int>> adj(9);
    for (auto [u, v] : g.edges()) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    oracle::Distances dist(9, int_edges(g));
    // Two single-vertex sets joined by one shortest path.
    Vertex a = rng.below(9), b = rng.below(9);
    if (a == b || dist.d[a][b] == oracle::kInf || dist.d[a][b] < 1) continue;
    FatModel m;
    m.pattern.vertex_count = 2;
    m.pattern.edges = {{0, 1}};
    m.branch_sets = {VertexSet{a}, VertexSet{b}};
    m.branch_paths = {shortest_path(g, {a}, b)};
    auto v = view_of(m);
    bool oracle_ok = oracle::structurally_valid(dist, adj, v);
    int need = oracle::kInf;
    for (const auto& rec : oracle::measure(dist, v)) need = std::min(need, std::get<4>(rec));
    for (Distance k = 0; k <= 5; ++k) {
      bool expect = oracle_ok && (need == oracle::kInf || static_cast<int>(k) <= need);
      CHECK(verify_fat_model(g, m, k).valid == expect);
      if (k > 0 && verify_fat_model(g, m, k).valid) CHECK(verify_fat_model(g, m, k - 1).valid);
    }
    ++checked;
  }
  CHECK(checked > 20);
}

}  // TEST_SUITE
