// coarse-minor: command-line front end.
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 budget exhausted.

#include <coarse_minor/distortion.hpp>
#include <coarse_minor/edge_list.hpp>
#include <coarse_minor/generators.hpp>
#include <coarse_minor/json_io.hpp>
#include <coarse_minor/minor_check.hpp>
#include <coarse_minor/partition.hpp>
#include <coarse_minor/theta_finder.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace coarse_minor;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudget = 3;

struct ProfileArgs {
  std::string mode = "paper";
  std::optional<std::uint64_t> N, L, Lp, R0;

  void attach(CLI::App* app) {
    app->add_option("--profile", mode, "constants profile")->check(CLI::IsMember({"paper", "scaled"}));
    app->add_option("--N", N, "scaled profile: N");
    app->add_option("--L", L, "scaled profile: L (ell)");
    app->add_option("--Lp", Lp, "scaled profile: L'");
    app->add_option("--R0", R0, "scaled profile: R0");
  }
  ProfileMode profile_mode() const { return mode == "scaled" ? ProfileMode::Scaled : ProfileMode::PaperExact; }
  ScaledOverrides overrides() const { return {N, L, Lp, R0}; }
  ConstantsProfile make(std::uint32_t t, std::uint64_t k) const {
    if (profile_mode() == ProfileMode::PaperExact) {
      if (N || L || Lp || R0) throw std::invalid_argument("--N/--L/--Lp/--R0 need --profile scaled");
      return compute_constants(t, k, ProfileMode::PaperExact);
    }
    return scaled_profile(t, k, overrides());
  }
};

PatternGraph parse_pattern(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string family = spec.substr(0, colon);
    auto n = static_cast<std::uint32_t>(std::stoul(spec.substr(colon + 1)));
    if (family == "k2t") return PatternGraph::k2t(n);
    if (family == "theta") return PatternGraph::theta(n);
    if (family == "cycle") return PatternGraph::cycle(n);
  }
  Json j = read_json_file(spec);
  // Either a bare pattern object or a fat-model document whose pattern is used.
  return pattern_from_json(j.contains("pattern") ? j["pattern"] : j);
}

// Induced subgraphs of the components, with local -> global vertex maps.
std::vector<std::pair<Graph, std::vector<Vertex>>> split_components(const Graph& g) {
  std::vector<std::pair<Graph, std::vector<Vertex>>> out;
  for (auto& c : components_with_boundary(g, VertexSet{})) {
    out.emplace_back(g.induced(c.component), c.component.vector());
  }
  return out;
}

Json partition_outcome_json(const Graph& g, const ConstantsProfile& profile, const BuildOptions& bo,
                            Json* merges) {
  BuildOutcome out = build_partition(g, profile, bo);
  if (merges)
    for (const auto& m : out.merges) merges->push_back(to_json(m));
  if (out.kind == BuildOutcome::Kind::Partition) return to_json(*out.partition, out.profile);
  Json w = to_json(*out.witness);
  w["rule"] = out.witness_rule;
  return w;
}

int cmd_gen(const std::string& spec, const std::string& out) {
  Graph g = generate(spec);
  if (out.empty() || out == "-")
    write_edge_list(std::cout, g);
  else
    write_edge_list_file(out, g);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fat minors, layered partitions and distortion into K_{2,t}-minor-free graphs"};
  app.require_subcommand(1);

  std::string out_path = "-";
  std::string graph_path;

  auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
  std::string gen_spec;
  gen->add_option("spec", gen_spec, "path:N | cycle:N | grid:WxH | theta:T,LEG | comb:SPAN,SPACING,RUNG | "
                                    "random-tree:N,SEED | gnp:N,P,SEED")
      ->required();
  gen->add_option("-o,--output", out_path, "output file");

  auto* part = app.add_subcommand("partition", "build a layered partition or find a fat theta");
  std::uint32_t t = 3;
  std::uint64_t k = 1;
  ProfileArgs prof;
  std::optional<Vertex> root;
  std::string dump_merge;
  part->add_option("--t", t, "t >= 3");
  part->add_option("--K", k, "fatness K >= 1");
  prof.attach(part);
  part->add_option("--root", root, "root vertex (default 0 in each component)");
  part->add_option("--dump-merge", dump_merge, "write every merging problem and result to this file");
  part->add_option("graph", graph_path, "edge list")->required();
  part->add_option("-o,--output", out_path, "output file");

  auto* vpart = app.add_subcommand("verify-partition", "check a partition document against the graph");
  std::string part_path;
  vpart->add_option("partition", part_path, "partition JSON")->required();
  vpart->add_option("graph", graph_path, "edge list")->required();
  vpart->add_option("-o,--output", out_path, "output file");

  auto* theta = app.add_subcommand("find-theta", "run a theta detector described by a JSON query");
  std::string query_path;
  theta->add_option("query", query_path, "query JSON")->required();
  theta->add_option("graph", graph_path, "edge list")->required();
  theta->add_option("-o,--output", out_path, "output file");

  auto* minor = app.add_subcommand("check-minor", "decide whether the host has the pattern as a minor");
  std::string pattern_spec;
  std::uint64_t max_nodes = MinorBudget{}.max_nodes;
  double max_seconds = 0;
  bool prefilter = false;
  minor->add_option("--pattern", pattern_spec, "k2t:T | theta:T | cycle:N | pattern.json")->required();
  minor->add_option("--max-nodes", max_nodes, "search node budget");
  minor->add_option("--max-seconds", max_seconds, "search time budget (0 = none)");
  minor->add_flag("--prefilter", prefilter, "report the advisory edge-density hint");
  minor->add_option("graph", graph_path, "edge list")->required();
  minor->add_option("-o,--output", out_path, "output file");

  auto* approx = app.add_subcommand("approx", "approximate the distortion into K_{2,t}-minor-free graphs");
  bool exhaustive = false, paranoid = false;
  unsigned jobs = 1;
  std::uint64_t max_k = 0;
  approx->add_option("--t", t, "t >= 3");
  prof.attach(approx);
  approx->add_flag("--exhaustive", exhaustive, "try K = 1, 2, ..., n in order");
  approx->add_flag("--paranoid", paranoid, "re-verify every stored partition, witness and map");
  approx->add_option("--jobs", jobs, "attempts run concurrently");
  approx->add_option("--root", root, "root vertex");
  approx->add_option("--max-k", max_k, "largest K to try (default n)");
  approx->add_option("--max-nodes", max_nodes, "minor search node budget per query");
  approx->add_option("graph", graph_path, "edge list")->required();
  approx->add_option("-o,--output", out_path, "output file");

  auto* vmodel = app.add_subcommand("verify-model", "check a fat minor model");
  Distance model_k = 0;
  std::string model_path;
  vmodel->add_option("--K", model_k, "required fatness")->required();
  vmodel->add_option("model", model_path, "model JSON")->required();
  vmodel->add_option("graph", graph_path, "edge list")->required();
  vmodel->add_option("-o,--output", out_path, "output file");

  auto* vqi = app.add_subcommand("verify-qi", "check the bag map of a partition as a quasi-isometry");
  QIOptions qi;
  bool with_map = false;
  vqi->add_option("partition", part_path, "partition JSON")->required();
  vqi->add_option("graph", graph_path, "edge list")->required();
  vqi->add_option("--exhaustive-limit", qi.exhaustive_limit, "all pairs up to this many vertices");
  vqi->add_option("--pairs", qi.sampled_pairs, "sampled pairs above the limit");
  vqi->add_option("--seed", qi.seed, "sampling seed");
  vqi->add_flag("--with-map", with_map, "include the vertex map in the output");
  vqi->add_option("-o,--output", out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_spec, out_path);

    Graph g = read_edge_list_file(graph_path);

    if (*part) {
      ConstantsProfile profile = prof.make(t, k);
      BuildOptions bo;
      bo.record_merges = !dump_merge.empty();
      Json merges = Json::array();
      Json* mp = dump_merge.empty() ? nullptr : &merges;
      Json doc;
      if (is_connected(g)) {
        bo.root = root;
        doc = partition_outcome_json(g, profile, bo, mp);
      } else {
        if (root) throw std::invalid_argument("--root needs a connected graph");
        doc = {{"schema", kPartitionSetSchema}, {"components", Json::array()}};
        for (auto& [sub, ids] : split_components(g))
          doc["components"].push_back({{"vertices", ids}, {"result", partition_outcome_json(sub, profile, bo, mp)}});
      }
      if (mp) write_json_file(dump_merge, {{"schema", kMergeDumpSchema}, {"records", merges}});
      write_json_file(out_path, doc);
      return kOk;
    }

    if (*vpart) {
      auto pd = partition_from_json(read_json_file(part_path));
      if (!pd.profile) throw JsonFormatError("partition document has no profile");
      auto rep = verify_partition(g, pd.partition, *pd.profile);
      write_json_file(out_path, to_json(rep));
      return rep.valid ? kOk : kVerifyFailed;
    }

    if (*theta) {
      Json q = read_json_file(query_path);
      if (!q.contains("schema") || q["schema"] != kThetaQuerySchema)
        throw JsonFormatError(std::string("query schema must be ") + kThetaQuerySchema);
      std::string op = q.at("op").get<std::string>();
      auto set = [&](const char* key) { return vertex_set_from_json(q.at(key)); };
      auto tt = q.value("t", 3u);
      auto kk = q.value("k", Distance{1});
      Json out;
      if (op == "dispersed-tuple") {
        auto tuple = find_dispersed_tuple(g, set("s"), tt, q.at("sep").get<Distance>());
        out = {{"schema", kAuditSchema}, {"tuple", tuple ? Json(tuple->vector()) : Json(nullptr)}};
      } else {
        AuditOutcome a;
        if (op == "dispersion") {
          a = theta_from_dispersion(g, {set("x_set"), set("y_set"), tt, kk});
        } else if (op == "boundary") {
          a = audit_boundary(g, set("x_set"), kk, set("c"), tt);
        } else if (op == "attachments") {
          std::vector<VertexSet> xs;
          for (const auto& s : q.at("x_sets")) xs.push_back(vertex_set_from_json(s));
          a = audit_attachments(g, xs, kk, tt);
        } else {
          throw std::invalid_argument("unknown op '" + op + "' (dispersed-tuple, dispersion, boundary, attachments)");
        }
        out = to_json(a);
      }
      write_json_file(out_path, out);
      return kOk;
    }

    if (*minor) {
      MinorQuery q;
      q.host = &g;
      q.pattern = parse_pattern(pattern_spec);
      q.budget.max_nodes = max_nodes;
      q.budget.max_seconds = max_seconds;
      q.density_prefilter = prefilter;
      auto r = has_minor(q);
      write_json_file(out_path, to_json(r));
      return r.answer == MinorResult::Answer::Unknown ? kBudget : kOk;
    }

    if (*approx) {
      DistortionOptions o;
      o.t = t;
      o.mode = prof.profile_mode();
      o.scaled = prof.overrides();
      o.exhaustive = exhaustive;
      o.paranoid = paranoid;
      o.jobs = jobs;
      o.root = root;
      o.max_k = max_k;
      o.minor_budget.max_nodes = max_nodes;
      auto rep = approximate_distortion(g, o);
      write_json_file(out_path, to_json(rep));
      for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
      if (!rep.paranoid_failures.empty()) return kVerifyFailed;
      if (rep.k_min == 0) {
        for (const auto& a : rep.attempts)
          if (a.outcome == Attempt::Outcome::Unknown) return kBudget;
        return kVerifyFailed;
      }
      return kOk;
    }

    if (*vmodel) {
      FatModel m = model_from_json(read_json_file(model_path));
      auto rep = verify_fat_model(g, m, model_k);
      write_json_file(out_path, to_json(rep));
      return rep.valid ? kOk : kVerifyFailed;
    }

    if (*vqi) {
      Json doc = read_json_file(part_path);
      if (doc.value("schema", "") == kPartitionSetSchema) {
        auto comps = split_components(g);
        if (doc.at("components").size() != comps.size())
          throw JsonFormatError("partition set does not match the graph's components");
        Json out = {{"schema", kPartitionSetSchema}, {"components", Json::array()}};
        bool ok = true;
        for (std::size_t i = 0; i < comps.size(); ++i) {
          const Json& c = doc["components"][i];
          if (c.at("vertices").get<std::vector<Vertex>>() != comps[i].second)
            throw JsonFormatError("component " + std::to_string(i) + " vertex list does not match the graph");
          const Json& res = c.at("result");
          if (res.value("schema", "") != kPartitionSchema) {
            out["components"].push_back({{"vertices", comps[i].second}, {"skipped", "no partition"}});
            continue;
          }
          auto rep = quasi_isometry(comps[i].first, partition_from_json(res).partition, qi);
          ok = ok && rep.valid();
          out["components"].push_back({{"vertices", comps[i].second}, {"report", to_json(rep, with_map)}});
        }
        write_json_file(out_path, out);
        return ok ? kOk : kVerifyFailed;
      }
      auto rep = quasi_isometry(g, partition_from_json(doc).partition, qi);
      write_json_file(out_path, to_json(rep, with_map));
      return rep.valid() ? kOk : kVerifyFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const JsonFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
