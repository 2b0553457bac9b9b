#include <coarse_minor/generators.hpp>
#include <coarse_minor/theta_finder.hpp>

#include "../oracles/distances.hpp"
#include "../oracles/tuples.hpp"

#include <doctest.h>

using namespace coarse_minor;

namespace {

VertexSet range_set(Vertex lo, Vertex hi) {
  std::vector<Vertex> v;
  for (Vertex x = lo; x <= hi; ++x) v.push_back(x);
  return VertexSet::from_sorted(std::move(v));
}

// comb_graph(span, ...) puts the bottom path on 0..span and the spine on span+1..2span+1.
VertexSet bottom(std::size_t span) { return range_set(0, static_cast<Vertex>(span)); }
VertexSet spine(std::size_t span) {
  return range_set(static_cast<Vertex>(span + 1), static_cast<Vertex>(2 * span + 1));
}

void check_witness(const Graph& g, const AuditOutcome& out, Distance k, std::uint32_t t) {
  REQUIRE(out.is_witness());
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->pattern == PatternGraph::theta(t));
  auto rep = verify_fat_model(g, *out.witness, k);
  CHECK(rep.valid);
}

}  // namespace

TEST_SUITE("theta-finder") {

TEST_CASE("dispersed tuple examples") {
  Graph comb = comb_graph(60, 30, 6);
  VertexSet tops{61, 91, 121};
  auto found = find_dispersed_tuple(comb, tops, 3, 18);
  REQUIRE(found.has_value());
  CHECK(*found == tops);
  CHECK_FALSE(find_dispersed_tuple(comb, tops, 4, 18).has_value());
  CHECK_FALSE(find_dispersed_tuple(comb, {5}, 2, 0).has_value());
  auto one = find_dispersed_tuple(comb, {40, 7, 99}, 1, 1000);
  REQUIRE(one.has_value());
  CHECK(*one == VertexSet{7});
}

TEST_CASE("exact fallback finds tuples greedy misses") {
  // Greedy takes 0 first and then nothing fits; {1, 3} is the answer.
  Graph star(5, std::vector<Edge>{{0, 2}, {1, 2}, {2, 3}, {3, 4}});
  auto found = find_dispersed_tuple(star, {0, 1, 4}, 2, 3);
  REQUIRE(found.has_value());
  CHECK(distance_sets(star, {found->vector()[0]}, {found->vector()[1]}) >= 3);
}

TEST_CASE("dispersed tuples agree with the oracle on small random graphs") {
  Rng rng(17);
  for (int round = 0; round < 300; ++round) {
    std::size_t n = 3 + rng.below(7);
    Graph g = gnp_graph(n, 0.3, 4000 + round);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(u, v);
    oracle::Distances dist(static_cast<int>(n), edges);
    std::vector<Vertex> pick;
    for (Vertex v = 0; v < n; ++v)
      if (rng.below(3) != 0) pick.push_back(v);
    auto s = VertexSet::from_sorted(pick);
    std::uint32_t t = 1 + rng.below(4);
    Distance sep = rng.below(5);
    auto found = find_dispersed_tuple(g, s, t, sep);
    std::vector<int> si(s.begin(), s.end());
    CHECK(found.has_value() == oracle::dispersed_tuple_exists(dist, si, static_cast<int>(t), static_cast<int>(sep)));
    if (found) {
      CHECK(found->size() == t);
      for (Vertex a : *found) {
        CHECK(s.contains(a));
        for (Vertex b : *found)
          if (a < b) CHECK(dist.d[a][b] >= static_cast<int>(sep));
      }
    }
  }
}

TEST_CASE("theta_from_dispersion on the comb") {
  Graph comb = comb_graph(60, 30, 6);
  DispersionQuery q{bottom(60), spine(60), 3, 6};
  auto out = theta_from_dispersion(comb, q);
  check_witness(comb, out, 6, 3);
  CHECK(out.rule == "dispersion");
  // V_0 = Y, V_1 = X and the rungs are the branch paths.
  CHECK(out.witness->branch_sets[0] == spine(60));
  CHECK(out.witness->branch_sets[1] == bottom(60));
  for (const auto& p : out.witness->branch_paths) CHECK(p.size() == 7);

  q.t = 4;
  auto none = theta_from_dispersion(comb, q);
  CHECK_FALSE(none.is_witness());
  CHECK(none.measurements.at("candidates") == 3);
}

TEST_CASE("theta_from_dispersion on a cycle") {
  Graph c = cycle_graph(100);
  DispersionQuery q{range_set(0, 29), range_set(39, 90), 2, 10};
  auto out = theta_from_dispersion(c, q);
  check_witness(c, out, 10, 2);
}

TEST_CASE("theta_from_dispersion preconditions") {
  Graph c = cycle_graph(100);
  CHECK_THROWS_AS(theta_from_dispersion(c, {range_set(0, 29), range_set(35, 90), 2, 10}), AuditError);
  CHECK_THROWS_AS(theta_from_dispersion(c, {VertexSet{0, 5}, range_set(39, 90), 2, 10}), AuditError);
}

TEST_CASE("audit_boundary on a path confirms") {
  Graph p = path_graph(100);
  auto out = audit_boundary(p, range_set(0, 10), 3, range_set(13, 99), 3);
  CHECK_FALSE(out.is_witness());
  CHECK(out.measurements.at("near_components") == 1);
  CHECK(out.measurements.at("max_diameter") == 0);
  CHECK_THROWS_AS(audit_boundary(p, range_set(0, 10), 3, range_set(14, 99), 3), AuditError);
}

TEST_CASE("audit_boundary counts near-components on the comb") {
  Graph comb = comb_graph(60, 30, 6);
  auto x = bottom(60);
  auto removed = ball(comb, x, 5);
  auto parts = components_with_boundary(comb, removed);
  REQUIRE(parts.size() == 1);
  auto out = audit_boundary(comb, x, 6, parts[0].component, 3);
  check_witness(comb, out, 6, 3);
  CHECK(out.rule == "boundary-count");
}

TEST_CASE("audit_boundary walks a long near-component on the ladder") {
  Graph ladder = comb_graph(200, 1, 6);
  auto x = bottom(200);
  auto parts = components_with_boundary(ladder, ball(ladder, x, 2));
  REQUIRE(parts.size() == 1);
  auto out = audit_boundary(ladder, x, 3, parts[0].component, 3);
  check_witness(ladder, out, 3, 3);
  CHECK(out.rule == "boundary-diameter");
}

TEST_CASE("audit_attachments between two rung-joined paths") {
  Graph g = comb_graph(400, 40, 10);
  auto out = audit_attachments(g, {bottom(400), spine(400)}, 3, 3);
  check_witness(g, out, 3, 3);
  CHECK(out.rule == "attachments");

  Graph two = comb_graph(400, 400, 10);
  auto none = audit_attachments(two, {bottom(400), spine(400)}, 3, 3);
  CHECK_FALSE(none.is_witness());

  auto lone = audit_attachments(path_graph(30), {range_set(0, 4)}, 2, 3);
  CHECK_FALSE(lone.is_witness());
}

TEST_CASE("audit_attachments hypotheses") {
  Graph g = comb_graph(400, 40, 10);
  CHECK_THROWS_AS(audit_attachments(g, {bottom(400), spine(400)}, 4, 3), AuditError);  // 10 < 12
  CHECK_THROWS_AS(audit_attachments(g, {bottom(400), spine(400), VertexSet{500}}, 1, 3), AuditError);
}

TEST_CASE("outcomes are deterministic") {
  Graph g = comb_graph(400, 40, 10);
  auto a = audit_attachments(g, {bottom(400), spine(400)}, 3, 3);
  auto b = audit_attachments(g, {bottom(400), spine(400)}, 3, 3);
  REQUIRE(a.is_witness());
  REQUIRE(b.is_witness());
  CHECK(a.measurements == b.measurements);
  CHECK(a.witness->branch_sets == b.witness->branch_sets);
  CHECK(a.witness->branch_paths == b.witness->branch_paths);
}

}  // TEST_SUITE
