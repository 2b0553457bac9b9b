#include <coarse_minor/edge_list.hpp>

#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace coarse_minor {

namespace {

std::uint64_t parse_id(const std::string& token, std::size_t line_no) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                     token + "'");
  std::uint64_t value = 0;
  for (char c : token) {
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
    if (value >= kNoVertex) throw ParseError("line " + std::to_string(line_no) + ": id too large");
  }
  return value;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::optional<std::uint64_t> declared;
  std::vector<Edge> edges;
  std::uint64_t max_id_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    if (fields >> extra)
      throw ParseError("line " + std::to_string(line_no) + ": too many fields");
    if (a == "n") {
      if (declared) throw ParseError("line " + std::to_string(line_no) + ": duplicate 'n' header");
      if (!edges.empty())
        throw ParseError("line " + std::to_string(line_no) + ": 'n' header must precede edges");
      declared = parse_id(b, line_no);
      continue;
    }
    if (b.empty()) throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
    auto u = parse_id(a, line_no), v = parse_id(b, line_no);
    if (u == v) throw ParseError("line " + std::to_string(line_no) + ": self-loop at " + a);
    if (declared && (u >= *declared || v >= *declared))
      throw ParseError("line " + std::to_string(line_no) + ": vertex id exceeds declared count " +
                       std::to_string(*declared));
    max_id_plus_one = std::max({max_id_plus_one, u + 1, v + 1});
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph(declared.value_or(max_id_plus_one), edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_edge_list(out, g);
}

}  // namespace coarse_minor
