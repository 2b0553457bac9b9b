#pragma once

#include <coarse_minor/graph.hpp>

#include <iosfwd>
#include <string>

namespace coarse_minor {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Format: optional "n <count>" header, then one "u v" pair per line.
// Lines starting with '#' are comments. Without a header the vertex count is
// one more than the largest id seen.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace coarse_minor
