#pragma once

#include <coarse_minor/fat_model.hpp>
#include <coarse_minor/graph.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coarse_minor {

class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DispersionQuery {
  VertexSet x_set;
  VertexSet y_set;
  std::uint32_t t = 1;
  Distance k = 0;
};

struct AuditOutcome {
  enum class Kind { Confirmation, Witness };
  Kind kind = Kind::Confirmation;
  // Which detector produced the result: "dispersion", "boundary-count",
  // "boundary-diameter" or "attachments".
  std::string rule;
  std::map<std::string, std::int64_t> measurements;
  std::optional<FatModel> witness;

  bool is_witness() const { return kind == Kind::Witness; }
};

// t vertices of s pairwise at distance >= sep, or nullopt if none exist.
std::optional<VertexSet> find_dispersed_tuple(const Graph& g, const VertexSet& s, std::uint32_t t,
                                              Distance sep);

AuditOutcome theta_from_dispersion(const Graph& g, const DispersionQuery& q);

// Theta_t model with V_0 = y_set, V_1 = x_set and a length-k path from every
// tuple vertex to x_set. Tuple vertices must lie in y_set at distance exactly k
// from x_set and be pairwise >= 3k apart.
FatModel theta_from_tuple(const Graph& g, const VertexSet& x_set, const VertexSet& y_set,
                          const VertexSet& tuple, Distance k);

AuditOutcome audit_boundary(const Graph& g, const VertexSet& x_set, Distance k,
                            const VertexSet& c, std::uint32_t t);

AuditOutcome audit_attachments(const Graph& g, const std::vector<VertexSet>& x_sets, Distance k,
                               std::uint32_t t);

}  // namespace coarse_minor
