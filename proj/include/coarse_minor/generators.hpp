#pragma once

#include <coarse_minor/graph.hpp>

#include <cstdint>
#include <string>

namespace coarse_minor {

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph grid_graph(std::size_t width, std::size_t height);
// Hubs 0 and 1 joined by t internally disjoint paths of length `leg`.
Graph theta_graph(std::size_t t, std::size_t leg);
// Bottom path b_0..b_span (ids 0..span), spine t_0..t_span (ids span+1..2span+1),
// and a rung of length `rung` from b_c to t_c at every column c divisible by spacing.
Graph comb_graph(std::size_t span, std::size_t spacing, std::size_t rung);
// Uniform random labelled tree (Pruefer decoding).
Graph random_tree(std::size_t n, std::uint64_t seed);
Graph gnp_graph(std::size_t n, double p, std::uint64_t seed);

// "path:5", "cycle:50", "grid:10x20", "theta:3,600", "comb:60,30,6",
// "random-tree:2000,7", "gnp:20,0.2,7".
Graph generate(const std::string& spec);

// Small deterministic RNG wrapper so generated graphs do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  double unit();                              // uniform in [0, 1)

 private:
  std::uint64_t state_[4];
};

}  // namespace coarse_minor
