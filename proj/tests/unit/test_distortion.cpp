#include <coarse_minor/distortion.hpp>
#include <coarse_minor/generators.hpp>

#include <doctest.h>

#include <set>

using namespace coarse_minor;

namespace {

bool injective(const std::vector<NodeId>& phi) {
  return std::set<NodeId>(phi.begin(), phi.end()).size() == phi.size();
}

bool k23_free(const Graph& h) {
  MinorQuery q;
  q.host = &h;
  q.pattern = PatternGraph::k2t(3);
  return has_minor(q).answer == MinorResult::Answer::No;
}

}  // namespace

TEST_SUITE("distortion-cli") {

TEST_CASE("star_augment leaves injective maps alone") {
  Graph h = path_graph(4);
  auto s = star_augment(h, {0, 1, 2, 3});
  CHECK(s.leaves_added == 0);
  CHECK(s.h.edges() == h.edges());
  CHECK(s.phi == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("star_augment splits shared images") {
  Graph h = path_graph(2);
  auto s = star_augment(h, {0, 0, 1});
  CHECK(s.leaves_added == 1);
  CHECK(s.h.vertex_count() == 3);
  CHECK(s.phi[0] == 0);
  CHECK(s.phi[1] == 2);
  CHECK(s.h.has_edge(0, 2));
  CHECK(injective(s.phi));
}

TEST_CASE("star_augment on a builder map keeps small H minor-free") {
  // Truncate P1000 so the augmented H stays below 40 nodes.
  Graph g = path_graph(330);
  auto out = build_partition(g, compute_constants(3, 1));
  REQUIRE(out.kind == BuildOutcome::Kind::Partition);
  Graph h = out.partition->quotient();
  // keep only the first few preimages per node so the star stays small
  std::vector<NodeId> phi;
  std::vector<Vertex> keep;
  std::vector<int> taken(h.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (taken[out.partition->node_of[v]]++ < 12) {
      keep.push_back(v);
      phi.push_back(out.partition->node_of[v]);
    }
  auto s = star_augment(h, phi);
  CHECK(injective(s.phi));
  CHECK(s.h.vertex_count() <= 40);
  CHECK(k23_free(s.h));

  auto full = star_augment(h, out.partition->node_of);
  CHECK(injective(full.phi));
  CHECK(full.h.vertex_count() == g.vertex_count());
}

TEST_CASE("P100 and C50 at K_min = 1") {
  for (const Graph& g : {path_graph(100), cycle_graph(50)}) {
    DistortionOptions o;
    o.paranoid = true;
    auto rep = approximate_distortion(g, o);
    CHECK(rep.k_min == 1);
    REQUIRE_FALSE(rep.attempts.empty());
    const auto& first = rep.attempts.front();
    CHECK(first.k == 1);
    CHECK(first.outcome == Attempt::Outcome::Success);
    CHECK(first.h_nodes == 1);
    CHECK(rep.paranoid_failures.empty());
    CHECK_FALSE(rep.lower_bound_witness.has_value());
    REQUIRE(rep.qi_augmented.has_value());
    CHECK(rep.qi_augmented->valid());
    CHECK(injective(rep.embedding->phi));
    CHECK(rep.bracket.rfind("[c*0, ", 0) == 0);
  }
}

TEST_CASE("Theta(3,600) needs K_min >= 2 with a certified lower bound") {
  Graph g = theta_graph(3, 600);
  DistortionOptions o;
  o.mode = ProfileMode::Scaled;
  o.paranoid = true;
  auto rep = approximate_distortion(g, o);
  REQUIRE(rep.k_min >= 2);
  REQUIRE(rep.lower_bound_witness.has_value());
  CHECK(rep.lower_bound_witness->pattern == PatternGraph::k2t(3));
  CHECK(verify_fat_model(g, *rep.lower_bound_witness, static_cast<Distance>(rep.k_min - 1)).valid);
  CHECK(rep.paranoid_failures.empty());
  for (const auto& a : rep.attempts) {
    if (a.outcome == Attempt::Outcome::Success) {
      CHECK(k23_free(a.partition->quotient()));
      CHECK(a.k >= rep.k_min);
    }
    if (a.outcome == Attempt::Outcome::Failure) {
      CHECK(a.provenance.rfind("theta-finder:", 0) == 0);
      CHECK(verify_fat_model(g, *a.witness, static_cast<Distance>(a.k)).valid);
    }
  }

  DistortionOptions ex = o;
  ex.exhaustive = true;
  ex.paranoid = false;
  ex.max_k = rep.k_min;
  auto lin = approximate_distortion(g, ex);
  CHECK(lin.k_min == rep.k_min);
  CHECK(lin.attempts.size() == rep.k_min);
}

TEST_CASE("parallel attempts give the same report") {
  Graph g = theta_graph(3, 600);
  DistortionOptions o;
  o.mode = ProfileMode::Scaled;
  auto one = approximate_distortion(g, o);
  o.jobs = 3;
  auto three = approximate_distortion(g, o);
  CHECK(one.k_min == three.k_min);
  REQUIRE(one.attempts.size() == three.attempts.size());
  for (std::size_t i = 0; i < one.attempts.size(); ++i) {
    CHECK(one.attempts[i].k == three.attempts[i].k);
    CHECK(one.attempts[i].outcome == three.attempts[i].outcome);
  }
  CHECK(one.bracket == three.bracket);
}

TEST_CASE("input contract") {
  DistortionOptions o;
  o.t = 2;
  CHECK_THROWS(approximate_distortion(path_graph(5), o));
  o.t = 3;
  CHECK_THROWS(approximate_distortion(Graph(4, std::vector<Edge>{{0, 1}, {2, 3}}), o));
}

TEST_CASE("generators") {
  Graph p5 = generate("path:5");
  CHECK(p5.vertex_count() == 5);
  CHECK(p5.edge_count() == 4);
  Graph th = generate("theta:3,10");
  CHECK(th.vertex_count() == 29);
  CHECK(th.edge_count() == 30);
  CHECK(generate("grid:10x20").vertex_count() == 200);
  CHECK(generate("comb:60,30,6").vertex_count() == 122 + 3 * 5);
  CHECK(generate("random-tree:2000,7").edge_count() == 1999);
  CHECK(is_connected(generate("random-tree:2000,7")));
  CHECK(generate("gnp:20,0.2,7").edges() == generate("gnp:20,0.2,7").edges());
  CHECK(generate("cycle:50").edge_count() == 50);
  CHECK_THROWS(generate("blob:3"));
  CHECK_THROWS(generate("path:x"));
  CHECK_THROWS(generate("theta:3"));
}

}  // TEST_SUITE
