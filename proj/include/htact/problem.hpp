#pragma once

#include <htact/engine.hpp>
#include <htact/graph_of_groups.hpp>
#include <htact/hcf_audit.hpp>

#include <json.hpp>

#include <filesystem>
#include <map>

namespace htact {

struct SchemaIssue {
  int line = 0;  // 1-based, 0 when unknown
  std::string path;
  std::string message;
};

class ProblemError : public Error {
 public:
  explicit ProblemError(std::vector<SchemaIssue> issues);
  std::vector<SchemaIssue> const& issues() const noexcept { return issues_; }

 private:
  std::vector<SchemaIssue> issues_;
};

struct ActionSpec {
  std::string kind;  // "finitary-symmetric", "translation", "cosets"
  int zone = 5;
  std::string embedding;
};

// A problem file: named groups and embeddings, an optional graph of groups,
// and the audit and engine parameters.
//
//   groups      name -> {"kind": trivial|cyclic|finite|free|free_abelian|
//                        semidirect|amalgam|hnn, ...kind fields, "labels"}
//   embeddings  name -> {"source", "target", "images": [word, ...]}
//   graph       {"vertices": [{"id", "group"}], "edges": [{"id", "source",
//               "range", "group", "s", "r"}], "base"}
//   task        {"group": name}   composite group to build when no graph
//   audits      [embedding, ...]
//   actions     [{"kind", "zone" | "embedding"}]
//   bounds      {"tuple_max", "point_radius", "witness_radius", "covering_max"}
//   budget      {"steps", "witness_radius", "witness_candidates", "wall_ms"}
struct ProblemFile {
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, EmbeddingPtr> embeddings;
  std::optional<GraphOfGroups> graph;
  std::string task_group;
  std::vector<std::string> audits;
  std::vector<ActionSpec> actions;
  AuditBounds bounds;
  EngineBudget budget;
  nlohmann::json normalized;  // canonical document, defaults filled in

  GroupPtr const& group(std::string const& name) const;
  EmbeddingPtr const& embedding(std::string const& name) const;
  std::uint64_t hash() const;
};

ProblemFile parse_problem_text(std::string_view text);
ProblemFile parse_problem(std::filesystem::path const& path);
// Canonical JSON text of the normalized document.
std::string print_problem(ProblemFile const& p);

std::unique_ptr<PointAction> make_action(ProblemFile const& p, ActionSpec const& spec);

// The orbit space the engine runs on: the graph reduced at `edge` (or the
// selected edge), else the task group.
struct BuildTarget {
  std::string name;
  OrbitSpacePtr space;
  std::optional<ReducedProblem> reduced;
};
BuildTarget build_target(ProblemFile const& p, std::string const& edge = "");

}  // namespace htact
