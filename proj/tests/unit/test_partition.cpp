#include <coarse_minor/distortion.hpp>
#include <coarse_minor/generators.hpp>
#include <coarse_minor/minor_check.hpp>
#include <coarse_minor/partition.hpp>

#include "../oracles/constants.hpp"

#include <doctest.h>

#include <sstream>

using namespace coarse_minor;

namespace {

std::string dump(const PartitionReport& r) {
  std::ostringstream out;
  for (const auto& v : r.violations) out << v.check << ": " << v.detail << "\n";
  return out.str();
}

bool has_check(const PartitionReport& r, const std::string& name) {
  for (const auto& v : r.violations)
    if (v.check == name) return true;
  return false;
}

// K_{2,3} with every edge replaced by a path of length 10, cut by hand into a
// partition whose H is K_{2,3} again (hubs A, B; leaves root, m2, m3).
struct HandBuilt {
  Graph g;
  LayeredPartition lp;
  ConstantsProfile profile;
};

HandBuilt k23_subdivided() {
  constexpr Vertex a = 0, b = 1, c1 = 2, c2 = 3, c3 = 4;
  constexpr std::size_t len = 10;
  std::vector<Edge> edges;
  Vertex next = 5;
  // path(x, y)[j] is the vertex at distance j from x, j = 0..len
  auto path = [&](Vertex x, Vertex y) {
    std::vector<Vertex> p{x};
    for (std::size_t j = 1; j < len; ++j) p.push_back(next++);
    p.push_back(y);
    for (std::size_t j = 0; j < len; ++j) edges.emplace_back(p[j], p[j + 1]);
    return p;
  };
  auto c1a = path(c1, a), c1b = path(c1, b);
  auto ac2 = path(a, c2), ac3 = path(a, c3), bc2 = path(b, c2), bc3 = path(b, c3);
  HandBuilt hb;
  hb.g = Graph(next, edges);

  ScaledOverrides o;
  o.N = 1;
  o.L = 2;
  o.L_prime = 8;
  hb.profile = scaled_profile(3, 1, o);

  auto span = [](const std::vector<Vertex>& p, std::size_t lo, std::size_t hi) {
    return std::vector<Vertex>(p.begin() + lo, p.begin() + hi + 1);
  };
  auto join = [](std::initializer_list<std::vector<Vertex>> parts) {
    std::vector<Vertex> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return VertexSet::from_unsorted(all);
  };

  auto& lp = hb.lp;
  lp.vertex_count = hb.g.vertex_count();
  lp.root = 0;
  lp.bags.resize(5);
  lp.bags[0] = {0, 0, join({span(c1a, 0, 5), span(c1b, 0, 5)}), VertexSet{c1}, 5, 0};
  lp.bags[1] = {1, 1, join({span(c1a, 6, 10), span(ac2, 1, 4), span(ac3, 1, 4)}), VertexSet{c1a[6]}, 8, 1};
  lp.bags[2] = {2, 1, join({span(c1b, 6, 10), span(bc2, 1, 4), span(bc3, 1, 4)}), VertexSet{c1b[6]}, 8, 1};
  lp.bags[3] = {3, 2, join({span(ac2, 5, 10), span(bc2, 5, 9)}), VertexSet{ac2[5], bc2[5]}, 8, 1};
  lp.bags[4] = {4, 2, join({span(ac3, 5, 10), span(bc3, 5, 9)}), VertexSet{ac3[5], bc3[5]}, 8, 1};
  lp.h_edges = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}};
  lp.rebuild_node_of();
  return hb;
}

}  // namespace

TEST_SUITE("partition-builder") {

TEST_CASE("constants match the independent formulas") {
  auto p = compute_constants(3, 1);
  CHECK(p.N == 4);
  CHECK(p.L == 14);
  CHECK(p.L_prime == 275);
  CHECK(p.R0 == 8325909);
  CHECK(p.R == 8326459);
  CHECK(compute_constants(4, 1).N == 27);
  for (std::uint32_t t = 3; t <= 5; ++t)
    for (std::uint64_t k = 1; k <= 6; ++k) {
      auto c = compute_constants(t, k);
      auto o = oracle::paper_constants(t, k);
      CHECK(c.N == o.N);
      CHECK(c.L == o.L);
      CHECK(c.L_prime == o.Lp);
      CHECK(c.R0 == o.R0);
      CHECK(c.R == o.R);
      CHECK((3 * k + 1) / 2 <= c.L);
    }
  CHECK_THROWS_AS(compute_constants(2, 1), PartitionError);
  CHECK_THROWS_AS(compute_constants(3, 0), PartitionError);
}

TEST_CASE("scaled profiles") {
  auto s = scaled_profile(3, 1);
  CHECK(s.mode == ProfileMode::Scaled);
  CHECK(s.N == 2);
  CHECK(s.L == 8);
  CHECK(s.L_prime == 93);
  CHECK(s.R == s.R0 + 2 * s.L_prime);
  CHECK(s.hypotheses_enforceable);
  ScaledOverrides tight;
  tight.L = 5;
  tight.L_prime = 10;  // below 2L + 3K
  CHECK_FALSE(scaled_profile(3, 1, tight).hypotheses_enforceable);
  ScaledOverrides broken;
  broken.L = 5;
  broken.L_prime = 6;  // below L + 2K
  CHECK_THROWS_AS(scaled_profile(3, 1, broken), PartitionError);
}

TEST_CASE("short path fits into the root bag") {
  Graph g = path_graph(100);
  auto out = build_partition(g, compute_constants(3, 1));
  REQUIRE(out.kind == BuildOutcome::Kind::Partition);
  CHECK(out.partition->bags.size() == 1);
  CHECK(out.partition->h_edges.empty());
  CHECK(verify_partition(g, *out.partition, out.profile).valid);
}

TEST_CASE("P1000 interval bags") {
  Graph g = path_graph(1000);
  auto prof = compute_constants(3, 1);
  auto out = build_partition(g, prof);
  REQUIRE(out.kind == BuildOutcome::Kind::Partition);
  const auto& lp = *out.partition;
  REQUIRE(lp.bags.size() >= 2);
  CHECK(lp.bags[0].vertices.size() == 276);
  CHECK(lp.bags[0].vertices.min() == 0);
  for (std::size_t h = 1; h + 1 < lp.bags.size(); ++h) {
    const auto& b = lp.bags[h];
    CHECK(b.vertices.size() == 32);
    CHECK(b.vertices.min() == 276 + 32 * (h - 1));
    CHECK(b.height == 31);
    CHECK(b.depth == 2);
    CHECK(b.layer == h);
  }
  CHECK(lp.h_edges.size() == lp.bags.size() - 1);
  auto rep = verify_partition(g, lp, prof);
  CHECK_MESSAGE(rep.valid, dump(rep));

  auto qi = quasi_isometry(g, lp);
  CHECK(qi.valid());
  CHECK(qi.exhaustive);
  CHECK(qi.R <= 275);
  CHECK(qi.claimed_M <= 276);
}

TEST_CASE("explicit root") {
  Graph g = path_graph(1000);
  BuildOptions opt;
  opt.root = 999;
  auto out = build_partition(g, compute_constants(3, 1), opt);
  REQUIRE(out.kind == BuildOutcome::Kind::Partition);
  CHECK(out.partition->bags[0].attachment == VertexSet{999});
  CHECK(verify_partition(g, *out.partition, out.profile).valid);
}

TEST_CASE("disconnected input is rejected") {
  Graph g(4, std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK_THROWS_AS(build_partition(g, compute_constants(3, 1)), PartitionError);
}

TEST_CASE("singleton bags fail the height range") {
  Graph g = path_graph(6);
  LayeredPartition lp;
  lp.vertex_count = 6;
  lp.root = 0;
  for (Vertex v = 0; v < 6; ++v) lp.bags.push_back({v, v, VertexSet{v}, VertexSet{v}, 0, v == 0 ? 0u : 1u});
  for (NodeId h = 0; h + 1 < 6; ++h) lp.h_edges.emplace_back(h, h + 1);
  lp.rebuild_node_of();
  auto rep = verify_partition(g, lp, compute_constants(3, 1));
  CHECK_FALSE(rep.valid);
  CHECK(has_check(rep, "heights"));

  // The same partition is an exact isometry.
  auto qi = quasi_isometry(g, lp);
  CHECK(qi.valid());
  CHECK(qi.R == 0);
  CHECK(qi.worst_expansion == doctest::Approx(1.0));
  CHECK(qi.worst_contraction == doctest::Approx(1.0));
}

TEST_CASE("moving one vertex between bags breaks levelness") {
  Graph g = path_graph(1000);
  auto prof = compute_constants(3, 1);
  auto lp = *build_partition(g, prof).partition;
  // vertex 307 is the top of bag 1; hand it to bag 2
  auto& b1 = lp.bags[1];
  auto& b2 = lp.bags[2];
  REQUIRE(b1.vertices.contains(307));
  b1.vertices = b1.vertices.minus({307});
  b2.vertices = b2.vertices.unite({307});
  lp.rebuild_node_of();
  auto rep = verify_partition(g, lp, prof);
  CHECK_FALSE(rep.valid);
  CHECK(has_check(rep, "levelness"));
}

TEST_CASE("swapped images are caught by the embedding check") {
  Graph g = path_graph(1000);
  auto lp = *build_partition(g, compute_constants(3, 1)).partition;
  Graph h = lp.quotient();
  auto phi = lp.node_of;
  std::swap(phi[0], phi[999]);
  auto rep = check_embedding(g, h, phi, 275);
  CHECK_FALSE(rep.valid());
  REQUIRE_FALSE(rep.violations.empty());
  auto v = rep.violations.front();
  CHECK((v.u == 0 || v.u == 999 || v.v == 0 || v.v == 999));
}

TEST_CASE("hand-built K_{2,3} partition extracts to a 1-fat model") {
  auto hb = k23_subdivided();
  auto rep = verify_partition(hb.g, hb.lp, hb.profile);
  REQUIRE_MESSAGE(rep.valid, dump(rep));

  auto model = extract_fat_model(hb.g, hb.lp, hb.profile, hb.lp.h_edges, &rep);
  CHECK(model.pattern.vertex_count == 5);
  auto fat = verify_fat_model(hb.g, model, 1);
  CHECK(fat.valid);

  Graph h = hb.lp.quotient();
  MinorQuery q;
  q.host = &h;
  q.pattern = PatternGraph::k2t(3);
  auto found = has_minor(q);
  REQUIRE(found.answer == MinorResult::Answer::Yes);
  auto composed = compose_models(model, *found.certificate, 1);
  CHECK(composed.pattern == PatternGraph::k2t(3));
  CHECK(verify_fat_model(hb.g, composed, 1).valid);

  // Each 4-cycle of H extracts as well.
  std::vector<std::pair<NodeId, NodeId>> square{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK(verify_fat_model(hb.g, extract_fat_model(hb.g, hb.lp, hb.profile, square), 1).valid);
}

TEST_CASE("extraction contract") {
  auto hb = k23_subdivided();
  CHECK_THROWS_AS(extract_fat_model(hb.g, hb.lp, hb.profile, {{0, 1}}), PartitionError);
  CHECK_THROWS_AS(extract_fat_model(hb.g, hb.lp, hb.profile, {{0, 1}, {1, 3}}), PartitionError);
  CHECK_THROWS_AS(extract_fat_model(hb.g, hb.lp, hb.profile, {{0, 1}, {0, 3}, {1, 3}}), PartitionError);
  auto broken = hb;
  broken.lp.bags[1].depth = 5;
  CHECK_THROWS_AS(extract_fat_model(broken.g, broken.lp, broken.profile, hb.lp.h_edges), PartitionError);
}

TEST_CASE("builder on a cycle: extraction through shortest cycles") {
  Graph g = cycle_graph(2000);
  auto prof = compute_constants(3, 1);
  auto out = build_partition(g, prof);
  REQUIRE(out.kind == BuildOutcome::Kind::Partition);
  auto rep = verify_partition(g, *out.partition, prof);
  REQUIRE_MESSAGE(rep.valid, dump(rep));
  Graph h = out.partition->quotient();
  auto cyc = shortest_cycle_through(h, 0);
  REQUIRE(cyc.size() >= 3);
  std::vector<std::pair<NodeId, NodeId>> j;
  for (std::size_t i = 0; i < cyc.size(); ++i) j.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
  auto m = extract_fat_model(g, *out.partition, prof, j, &rep);
  CHECK(verify_fat_model(g, m, 1).valid);
}

TEST_CASE("scaled builder finds a witness on a wide theta") {
  Graph g = theta_graph(3, 600);
  auto prof = scaled_profile(3, 1);
  auto out = build_partition(g, prof);
  if (out.kind == BuildOutcome::Kind::Witness) {
    CHECK(verify_fat_model(g, *out.witness, prof.k).valid);
    CHECK(out.witness->pattern == PatternGraph::theta(3));
  } else {
    auto rep = verify_partition(g, *out.partition, prof);
    CHECK_MESSAGE(rep.valid, dump(rep));
  }
}

}  // TEST_SUITE
