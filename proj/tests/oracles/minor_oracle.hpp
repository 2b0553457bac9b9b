#pragma once

// Exhaustive minor test for hosts with at most 16 vertices: pick pairwise
// disjoint connected vertex sets one pattern vertex at a time and count the
// host edges between them.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline bool has_minor_exhaustive(int n, const std::vector<std::pair<int, int>>& host_edges, int p,
                                 const std::vector<std::pair<int, int>>& pattern_edges) {
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : host_edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  std::vector<std::vector<int>> mult(p, std::vector<int>(p, 0));
  for (auto [x, y] : pattern_edges) {
    ++mult[x][y];
    ++mult[y][x];
  }
  auto connected = [&](std::uint32_t s) {
    std::uint32_t reach = s & -s;
    while (true) {
      std::uint32_t next = reach;
      for (int v = 0; v < n; ++v)
        if (reach >> v & 1) next |= adj[v] & s;
      if (next == reach) break;
      reach = next;
    }
    return reach == s;
  };
  std::vector<std::uint32_t> sets;
  for (std::uint32_t s = 1; s < (1u << n); ++s)
    if (connected(s)) sets.push_back(s);
  auto between = [&](std::uint32_t a, std::uint32_t b) {
    int count = 0;
    for (int v = 0; v < n; ++v)
      if (a >> v & 1) count += __builtin_popcount(adj[v] & b);
    return count;
  };
  std::vector<std::uint32_t> chosen(p);
  std::function<bool(int, std::uint32_t)> place = [&](int x, std::uint32_t used) {
    if (x == p) return true;
    for (std::uint32_t s : sets) {
      if (s & used) continue;
      bool ok = true;
      for (int y = 0; y < x && ok; ++y)
        if (mult[x][y] && between(s, chosen[y]) < mult[x][y]) ok = false;
      if (!ok) continue;
      chosen[x] = s;
      if (place(x + 1, used | s)) return true;
    }
    return false;
  };
  return place(0, 0);
}

}  // namespace oracle
