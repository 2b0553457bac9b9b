#include <coarse_minor/generators.hpp>
#include <coarse_minor/merging.hpp>

#include <doctest.h>

#include <algorithm>

using namespace coarse_minor;

namespace {

MergeResult run(const Graph& g, std::vector<VertexSet> q, Distance d, Distance r) {
  MergeProblem p;
  p.host = &g;
  p.q_family = std::move(q);
  p.d = d;
  p.r = r;
  auto res = merge_partition(p);
  CHECK(check_merge_result(p, res).empty());
  return res;
}

}  // namespace

TEST_SUITE("merging") {

TEST_CASE("no merge when the gap equals 2r + d") {
  Graph p = path_graph(200);
  auto res = run(p, {{0}, {5}, {100}}, 3, 1);
  CHECK(res.p_family == std::vector<VertexSet>{{0}, {5}, {100}});
  CHECK(res.level == 1);
  CHECK(res.merges == 0);
}

TEST_CASE("one merge raises the level") {
  Graph p = path_graph(200);
  auto res = run(p, {{0}, {4}, {100}}, 3, 1);
  CHECK(res.p_family == std::vector<VertexSet>{{0, 4}, {100}});
  CHECK(res.level == 2);
  CHECK(res.merges == 1);
  CHECK(res.provenance[0] == std::vector<std::uint32_t>{0, 1});
  CHECK(res.provenance[1] == std::vector<std::uint32_t>{2});
}

TEST_CASE("singleton family") {
  Graph p = path_graph(10);
  auto res = run(p, {{3, 4}}, 7, 2);
  CHECK(res.p_family.size() == 1);
  CHECK(res.level == 2);
}

TEST_CASE("overlapping sets are rejected") {
  Graph p = path_graph(10);
  MergeProblem prob;
  prob.host = &p;
  prob.q_family = {{1, 2}, {2, 3}};
  prob.d = 1;
  CHECK_THROWS_AS(merge_partition(prob), MergeError);
}

TEST_CASE("host mask restricts distances") {
  // On C_20 with vertex 10 removed, 9 and 11 are 18 apart instead of 2.
  Graph c = cycle_graph(20);
  auto mask = std::make_shared<std::vector<std::uint8_t>>(20, 1);
  (*mask)[10] = 0;
  MergeProblem prob;
  prob.host = &c;
  prob.host_mask = mask;
  prob.q_family = {{9}, {11}};
  prob.d = 4;
  prob.r = 0;
  auto res = merge_partition(prob);
  CHECK(res.merges == 0);
  CHECK(check_merge_result(prob, res).empty());
  prob.host_mask.reset();
  CHECK(merge_partition(prob).merges == 1);
}

TEST_CASE("random problems meet the merge bounds and ignore input order") {
  Rng rng(23);
  for (int round = 0; round < 40; ++round) {
    Graph g = random_tree(300, 70 + round);
    std::size_t n = 2 + rng.below(8);
    std::vector<Vertex> seeds;
    while (seeds.size() < n) {
      Vertex v = rng.below(300);
      if (std::find(seeds.begin(), seeds.end(), v) == seeds.end()) seeds.push_back(v);
    }
    std::vector<VertexSet> q;
    for (Vertex s : seeds) q.push_back({s});
    Distance d = 1 + rng.below(6), r = rng.below(4);
    MergeProblem p;
    p.host = &g;
    p.q_family = q;
    p.d = d;
    p.r = r;
    p.diameter_bound = 0;
    auto res = merge_partition(p);
    CHECK(check_merge_result(p, res).empty());
    CHECK(res.level >= r);
    CHECK(res.level <= r + (n * d) / 2);
    CHECK(res.merges <= n - 1);

    std::reverse(p.q_family.begin(), p.q_family.end());
    auto again = merge_partition(p);
    CHECK(again.p_family == res.p_family);
    CHECK(again.level == res.level);
  }
}

}  // TEST_SUITE
