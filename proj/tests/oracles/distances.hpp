#pragma once

// All-pairs distances by plain BFS over adjacency lists built from an edge list.
// Deliberately shares nothing with the library's BFS.

#include <cstdint>
#include <deque>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr int kInf = std::numeric_limits<int>::max();

struct Distances {
  int n = 0;
  std::vector<std::vector<int>> d;

  Distances(int n_, const std::vector<std::pair<int, int>>& edges) : n(n_), d(n_, std::vector<int>(n_, kInf)) {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (int s = 0; s < n; ++s) {
      std::deque<int> q{s};
      d[s][s] = 0;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj[u])
          if (d[s][w] == kInf) {
            d[s][w] = d[s][u] + 1;
            q.push_back(w);
          }
      }
    }
  }

  template <class A, class B>
  int between(const A& x, const B& y) const {
    int best = kInf;
    for (auto u : x)
      for (auto v : y) best = std::min(best, d[u][v]);
    return best;
  }

  template <class A>
  int diameter(const A& x) const {
    int best = 0;
    for (auto u : x)
      for (auto v : x) best = std::max(best, d[u][v]);
    return best;
  }
};

}  // namespace oracle
