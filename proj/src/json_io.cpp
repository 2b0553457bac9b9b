#include <coarse_minor/json_io.hpp>

#include <fstream>
#include <iostream>

namespace coarse_minor {

namespace {

void expect_schema(const Json& j, const char* schema) {
  if (!j.is_object()) throw JsonFormatError("expected a JSON object");
  auto it = j.find("schema");
  if (it == j.end()) throw JsonFormatError(std::string("missing \"schema\"; expected ") + schema);
  if (*it != schema)
    throw JsonFormatError("schema is " + it->dump() + ", expected \"" + schema + "\"");
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw JsonFormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw JsonFormatError(std::string("field \"") + key + "\": " + e.what());
  }
}

std::uint32_t index_key(const std::string& key) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || key.empty()) throw JsonFormatError("expected a numeric key, got \"" + key + "\"");
  return static_cast<std::uint32_t>(v);
}

Json vertices(const VertexSet& s) { return Json(s.vector()); }

std::string mode_name(ProfileMode m) { return m == ProfileMode::Scaled ? "scaled" : "paper"; }

Json model_object(const ModelObject& o) { return describe(o); }

}  // namespace

// nlohmann happily wraps negative numbers into unsigned targets.
static std::vector<Vertex> vertex_list(const Json& j) {
  if (!j.is_array()) throw JsonFormatError("vertex list must be an array");
  std::vector<Vertex> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::uint64_t>() >= kNoVertex)
      throw JsonFormatError("vertex list holds " + x.dump() + ", not a vertex id");
    out.push_back(x.get<Vertex>());
  }
  return out;
}

VertexSet vertex_set_from_json(const Json& j) { return VertexSet::from_unsorted(vertex_list(j)); }

Json to_json(const PatternGraph& p) {
  Json edges = Json::array();
  for (auto [x, y] : p.edges) edges.push_back({x, y});
  return {{"name", p.name}, {"vertex_count", p.vertex_count}, {"edges", edges}};
}

PatternGraph pattern_from_json(const Json& j) {
  PatternGraph p;
  if (j.contains("name")) p.name = get<std::string>(j, "name");
  p.vertex_count = get<std::uint32_t>(j, "vertex_count");
  p.edges = get<std::vector<std::pair<std::uint32_t, std::uint32_t>>>(j, "edges");
  try {
    p.validate();
  } catch (const ModelError& e) {
    throw JsonFormatError(e.what());
  }
  return p;
}

Json to_json(const FatModel& m) {
  Json sets = Json::object(), paths = Json::object();
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) sets[std::to_string(i)] = vertices(m.branch_sets[i]);
  for (std::size_t i = 0; i < m.branch_paths.size(); ++i) paths[std::to_string(i)] = m.branch_paths[i];
  return {{"schema", kModelSchema},
          {"pattern", to_json(m.pattern)},
          {"branch_sets", sets},
          {"branch_paths", paths},
          {"fatness", m.claimed_fatness}};
}

FatModel model_from_json(const Json& j) {
  expect_schema(j, kModelSchema);
  FatModel m;
  m.pattern = pattern_from_json(field(j, "pattern"));
  m.claimed_fatness = get<Distance>(j, "fatness");
  m.branch_sets.resize(m.pattern.vertex_count);
  m.branch_paths.resize(m.pattern.edges.size());
  std::vector<std::uint8_t> seen_set(m.branch_sets.size(), 0), seen_path(m.branch_paths.size(), 0);
  for (const auto& [key, value] : field(j, "branch_sets").items()) {
    auto i = index_key(key);
    if (i >= m.branch_sets.size()) throw JsonFormatError("branch set for unknown pattern vertex " + key);
    m.branch_sets[i] = vertex_set_from_json(value);
    seen_set[i] = 1;
  }
  for (const auto& [key, value] : field(j, "branch_paths").items()) {
    auto i = index_key(key);
    if (i >= m.branch_paths.size()) throw JsonFormatError("branch path for unknown pattern edge " + key);
    try {
      m.branch_paths[i] = vertex_list(value);
    } catch (const nlohmann::json::exception& e) {
      throw JsonFormatError("branch path " + key + ": " + e.what());
    }
    seen_path[i] = 1;
  }
  for (std::size_t i = 0; i < seen_set.size(); ++i)
    if (!seen_set[i]) throw JsonFormatError("no branch set for pattern vertex " + std::to_string(i));
  for (std::size_t i = 0; i < seen_path.size(); ++i)
    if (!seen_path[i]) throw JsonFormatError("no branch path for pattern edge " + std::to_string(i));
  return m;
}

Json to_json(const FatnessReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json e = {{"kind", x.kind == Violation::Kind::Structure ? "structure" : "distance"},
              {"first", model_object(x.first)},
              {"detail", x.detail}};
    if (x.kind == Violation::Kind::Distance) {
      e["second"] = model_object(x.second);
      e["required"] = x.required;
      e["actual"] = x.actual == kInfinity ? Json(nullptr) : Json(x.actual);
    }
    v.push_back(std::move(e));
  }
  return {{"schema", kFatnessReportSchema}, {"valid", r.valid}, {"violations", v}};
}

Json to_json(const ConstantsProfile& p) {
  return {{"mode", mode_name(p.mode)}, {"t", p.t},   {"K", p.k},   {"N", p.N},
          {"L", p.L},                  {"L_prime", p.L_prime},       {"R0", p.R0},
          {"R", p.R},                  {"hypotheses_enforceable", p.hypotheses_enforceable}};
}

ConstantsProfile profile_from_json(const Json& j) {
  ConstantsProfile p;
  auto mode = get<std::string>(j, "mode");
  if (mode != "paper" && mode != "scaled") throw JsonFormatError("profile mode must be paper or scaled");
  p.mode = mode == "scaled" ? ProfileMode::Scaled : ProfileMode::PaperExact;
  p.t = get<std::uint32_t>(j, "t");
  p.k = get<std::uint64_t>(j, "K");
  p.N = get<std::uint64_t>(j, "N");
  p.L = get<std::uint64_t>(j, "L");
  p.L_prime = get<std::uint64_t>(j, "L_prime");
  p.R0 = get<std::uint64_t>(j, "R0");
  p.R = get<std::uint64_t>(j, "R");
  if (j.contains("hypotheses_enforceable")) p.hypotheses_enforceable = get<bool>(j, "hypotheses_enforceable");
  return p;
}

Json to_json(const LayeredPartition& lp, const ConstantsProfile& profile) {
  Json bags = Json::object();
  for (const auto& b : lp.bags)
    bags[std::to_string(b.id)] = {{"vertices", vertices(b.vertices)},
                                  {"attachment", vertices(b.attachment)},
                                  {"height", b.height},
                                  {"depth", b.depth},
                                  {"layer", b.layer}};
  Json edges = Json::array();
  for (auto [a, b] : lp.h_edges) edges.push_back({a, b});
  return {{"schema", kPartitionSchema}, {"vertex_count", lp.vertex_count}, {"root", lp.root},
          {"H_edges", edges},          {"bags", bags},                     {"profile", to_json(profile)}};
}

PartitionDocument partition_from_json(const Json& j) {
  expect_schema(j, kPartitionSchema);
  PartitionDocument doc;
  auto& lp = doc.partition;
  lp.vertex_count = get<std::size_t>(j, "vertex_count");
  lp.root = get<NodeId>(j, "root");
  std::vector<std::pair<NodeId, NodeId>> edges = get<std::vector<std::pair<NodeId, NodeId>>>(j, "H_edges");
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  lp.h_edges = std::move(edges);
  const Json& bags = field(j, "bags");
  if (!bags.is_object()) throw JsonFormatError("\"bags\" must be an object keyed by node id");
  lp.bags.resize(bags.size());
  std::vector<std::uint8_t> seen(bags.size(), 0);
  for (const auto& [key, value] : bags.items()) {
    auto id = index_key(key);
    if (id >= lp.bags.size() || seen[id]) throw JsonFormatError("bag ids must be 0..n-1 without repeats");
    seen[id] = 1;
    Bag& b = lp.bags[id];
    b.id = id;
    b.vertices = vertex_set_from_json(field(value, "vertices"));
    b.attachment = vertex_set_from_json(field(value, "attachment"));
    b.height = get<Distance>(value, "height");
    b.depth = get<Distance>(value, "depth");
    b.layer = get<std::uint32_t>(value, "layer");
  }
  for (const auto& b : lp.bags)
    for (Vertex v : b.vertices)
      if (v >= lp.vertex_count) throw JsonFormatError("bag " + std::to_string(b.id) + " has vertex out of range");
  lp.rebuild_node_of();
  if (j.contains("profile")) doc.profile = profile_from_json(j["profile"]);
  return doc;
}

Json to_json(const PartitionReport& r) {
  Json v = Json::array();
  for (const auto& c : r.violations) v.push_back({{"check", c.check}, {"detail", c.detail}});
  return {{"schema", kPartitionReportSchema},
          {"valid", r.valid},
          {"violations", v},
          {"max_bag_diameter", r.max_bag_diameter},
          {"close_pairs_separated", r.close_pairs_separated}};
}

Json to_json(const QIReport& r, bool include_map) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"u", x.u},
                 {"v", x.v},
                 {"d_G", x.d_g == kInfinity ? Json(nullptr) : Json(x.d_g)},
                 {"d_H", x.d_h == kInfinity ? Json(nullptr) : Json(x.d_h)},
                 {"inequality", x.inequality}});
  Json out = {{"schema", kQIReportSchema},
              {"valid", r.valid()},
              {"R", r.R},
              {"claimed_M", r.claimed_M},
              {"claimed_A", r.claimed_A},
              {"slack", r.slack},
              {"exhaustive", r.exhaustive},
              {"pairs_checked", r.pairs_checked},
              {"worst_expansion", r.worst_expansion},
              {"worst_contraction", r.worst_contraction},
              {"surjective", r.surjective},
              {"violation_count", r.violation_count},
              {"violations", v}};
  if (include_map) out["map"] = r.map;
  return out;
}

Json to_json(const AuditOutcome& a) {
  Json out = {{"schema", kAuditSchema},
              {"kind", a.is_witness() ? "witness" : "confirmation"},
              {"rule", a.rule},
              {"measurements", a.measurements}};
  if (a.witness) out["witness"] = to_json(*a.witness);
  return out;
}

Json to_json(const MinorResult& r) {
  Json out = {{"schema", kMinorSchema}, {"answer", to_string(r.answer)}, {"nodes_explored", r.nodes_explored}};
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  if (!r.hint.empty()) out["hint"] = r.hint;
  return out;
}

Json to_json(const MergeRecord& r) {
  Json q = Json::array(), p = Json::array();
  for (const auto& s : r.problem.q_family) q.push_back(vertices(s));
  for (const auto& s : r.result.p_family) p.push_back(vertices(s));
  Json out = {{"schema", kMergeDumpSchema},
              {"step", r.step},
              {"group", r.group},
              {"round", r.round},
              {"r", r.problem.r},
              {"d", r.problem.d},
              {"restricted_host", static_cast<bool>(r.problem.host_mask)},
              {"q_family", q},
              {"p_family", p},
              {"level", r.result.level},
              {"merges", r.result.merges},
              {"provenance", r.result.provenance}};
  if (r.problem.diameter_bound) out["diameter_bound"] = *r.problem.diameter_bound;
  return out;
}

Json to_json(const DistortionReport& r) {
  Json attempts = Json::array();
  for (const auto& a : r.attempts) {
    Json e = {{"K", a.k},
              {"outcome", to_string(a.outcome)},
              {"internal_fatness", a.profile.k},
              {"profile", to_json(a.profile)},
              {"provenance", a.provenance},
              {"H_nodes", a.h_nodes},
              {"H_edges", a.h_edges},
              {"minor_nodes_explored", a.minor_nodes}};
    if (!a.note.empty()) e["note"] = a.note;
    if (a.witness) e["witness"] = to_json(*a.witness);
    if (a.partition) e["H_minor_free"] = true;
    attempts.push_back(std::move(e));
  }
  Json out = {{"schema", kDistortionSchema},
              {"t", r.t},
              {"K_min", r.k_min == 0 ? Json(nullptr) : Json(r.k_min)},
              {"attempts", attempts},
              {"measured_M", r.measured_M},
              {"measured_A", r.measured_A},
              {"bracket", r.bracket},
              {"bracket_note", "c is the unevaluated universal constant of the lower bound"},
              {"paranoid", r.paranoid},
              {"paranoid_failures", r.paranoid_failures},
              {"warnings", r.warnings}};
  if (r.embedding) {
    out["embedding"] = {{"phi", r.embedding->phi},
                        {"augmented_nodes", r.embedding->h.vertex_count()},
                        {"leaves_added", r.embedding->leaves_added},
                        {"augmented_edges", Json(r.embedding->h.edges())}};
  }
  if (r.qi_h) out["qi_H"] = to_json(*r.qi_h);
  if (r.qi_augmented) out["qi_augmented"] = to_json(*r.qi_augmented);
  if (r.lower_bound_witness) out["lower_bound_witness"] = to_json(*r.lower_bound_witness);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonFormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonFormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  if (path == "-" || path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw JsonFormatError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace coarse_minor
