#include <coarse_minor/generators.hpp>

#include <queue>
#include <sstream>
#include <vector>

namespace coarse_minor {

// xoshiro256** seeded through splitmix64.
Rng::Rng(std::uint64_t seed) {
  for (auto& s : state_) {
    seed += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    s = z ^ (z >> 31);
  }
}

std::uint64_t Rng::next() {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below(0)");
  // Rejection sampling to avoid modulo bias.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do x = next(); while (x >= limit);
  return x % bound;
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return Graph(n, e);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph grid_graph(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw std::invalid_argument("grid dimensions must be positive");
  std::vector<Edge> e;
  auto id = [&](std::size_t x, std::size_t y) { return static_cast<Vertex>(y * width + x); };
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x) {
      if (x + 1 < width) e.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < height) e.emplace_back(id(x, y), id(x, y + 1));
    }
  return Graph(width * height, e);
}

Graph theta_graph(std::size_t t, std::size_t leg) {
  if (t < 1 || leg < 1) throw std::invalid_argument("theta needs t >= 1 and leg >= 1");
  if (leg == 1 && t > 1) throw std::invalid_argument("theta with leg 1 would need parallel edges");
  std::vector<Edge> e;
  Vertex next = 2;
  for (std::size_t i = 0; i < t; ++i) {
    Vertex prev = 0;
    for (std::size_t j = 1; j < leg; ++j) {
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, 1);
  }
  return Graph(next, e);
}

Graph comb_graph(std::size_t span, std::size_t spacing, std::size_t rung) {
  if (spacing == 0 || rung == 0) throw std::invalid_argument("comb needs spacing >= 1 and rung >= 1");
  std::vector<Edge> e;
  const Vertex spine = static_cast<Vertex>(span + 1);
  for (std::size_t i = 0; i < span; ++i) {
    e.emplace_back(i, i + 1);
    e.emplace_back(spine + i, spine + i + 1);
  }
  Vertex next = static_cast<Vertex>(2 * (span + 1));
  for (std::size_t c = 0; c <= span; c += spacing) {
    Vertex prev = static_cast<Vertex>(c);
    for (std::size_t j = 1; j < rung; ++j) {
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, spine + c);
  }
  return Graph(next, e);
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  if (n <= 2) return path_graph(n);
  Rng rng(seed);
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  std::vector<std::uint32_t> degree(n, 1);
  for (auto c : code) ++degree[c];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  std::vector<Edge> e;
  for (auto c : code) {
    Vertex leaf = leaves.top();
    leaves.pop();
    e.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  Vertex a = leaves.top();
  leaves.pop();
  e.emplace_back(a, leaves.top());
  return Graph(n, e);
}

Graph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.unit() < p) e.emplace_back(u, v);
  return Graph(n, e);
}

namespace {

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-')
    throw std::invalid_argument("expected a nonnegative integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

Graph generate(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("generator spec needs 'family:params': " + spec);
  std::string family = spec.substr(0, colon);
  auto args = split(spec.substr(colon + 1), ",x");
  auto want = [&](std::size_t count) {
    if (args.size() != count)
      throw std::invalid_argument(family + " expects " + std::to_string(count) + " parameters");
  };
  if (family == "path") { want(1); return path_graph(to_size(args[0])); }
  if (family == "cycle") { want(1); return cycle_graph(to_size(args[0])); }
  if (family == "grid") { want(2); return grid_graph(to_size(args[0]), to_size(args[1])); }
  if (family == "theta") { want(2); return theta_graph(to_size(args[0]), to_size(args[1])); }
  if (family == "comb") { want(3); return comb_graph(to_size(args[0]), to_size(args[1]), to_size(args[2])); }
  if (family == "random-tree") { want(2); return random_tree(to_size(args[0]), to_size(args[1])); }
  if (family == "gnp") {
    auto parts = split(spec.substr(colon + 1), ",");
    if (parts.size() != 3) throw std::invalid_argument("gnp expects n,p,seed");
    return gnp_graph(to_size(parts[0]), std::stod(parts[1]), to_size(parts[2]));
  }
  throw std::invalid_argument("unknown generator family '" + family + "'");
}

}  // namespace coarse_minor
