#pragma once

#include <htact/action_space.hpp>
#include <htact/hcf_audit.hpp>
#include <htact/normal_form.hpp>

#include <map>

namespace htact {

// A geometric edge; its formal inverse is implicit. s embeds the edge group
// into the source vertex group, r into the range vertex group.
struct GraphEdge {
  std::string id;
  std::string source;
  std::string range;
  GroupPtr group;
  EmbeddingPtr s;
  EmbeddingPtr r;
};

class GraphOfGroups {
 public:
  void add_vertex(std::string id, GroupPtr group);
  // Checks endpoints and that s, r go from the edge group into the endpoint groups.
  void add_edge(GraphEdge edge);
  void set_base(std::string const& id);

  std::vector<std::pair<std::string, GroupPtr>> const& vertices() const noexcept { return vertices_; }
  std::vector<GraphEdge> const& edges() const noexcept { return edges_; }
  std::string const& base() const;
  GroupPtr const& vertex(std::string const& id) const;
  bool has_vertex(std::string const& id) const;
  GraphEdge const& edge(std::string const& id) const;

  bool connected() const;
  GraphOfGroups without_edge(std::string const& id) const;
  // The component containing `v`, based at `v`.
  GraphOfGroups component(std::string const& v) const;

 private:
  std::vector<std::pair<std::string, GroupPtr>> vertices_;
  std::vector<GraphEdge> edges_;
  std::string base_;
};

// BFS from the base vertex, edges scanned in declaration order. Returns edge ids.
std::vector<std::string> spanning_tree(GraphOfGroups const& g);

// A fundamental group together with the images of the vertex generators and
// of the edge letters (identity for tree edges).
struct Pi1 {
  GroupPtr group;
  std::map<std::string, std::vector<Code>> vertex_images;
  std::map<std::string, Code> edge_letters;
  std::vector<std::string> tree;

  // Image of a vertex-group element.
  Code lift(GraphOfGroups const& g, std::string const& vertex, Code const& x) const;
};

struct ReducedProblem {
  Mode mode = Mode::Amalgam;
  std::string edge;
  std::shared_ptr<HnnGroup const> hnn;
  std::shared_ptr<AmalgamGroup const> amalgam;
  Pi1 pi1;  // the whole fundamental group, group == hnn or amalgam
  std::vector<std::string> left, right;  // amalgam: vertices of each side

  OrbitSpacePtr orbit_space() const;
  std::string describe() const;
};

// Case 1 (remainder connected): HNN over the remainder with Sigma = r(E) and
// theta = s∘r^-1. Case 2: amalgam of the two components over E.
ReducedProblem reduce_edge(GraphOfGroups const& g, std::string const& edge);
// First edge whose removal disconnects, else the first edge.
std::string select_edge(GraphOfGroups const& g);
Pi1 fundamental_group(GraphOfGroups const& g);

struct HypothesisCheck {
  std::string subject;     // vertex or edge id, with side for edges
  std::string hypothesis;  // "infinite", "hcf", "structural", "edges"
  Status status = Status::Undecided;
  std::string detail;
  std::optional<AuditVerdict> verdict;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  Status overall() const;
};

HypothesisReport validate_main_hypotheses(GraphOfGroups const& g, AuditBounds const& bounds);

// Image of x under the homomorphism sending generator i of `from` to images[i].
Code map_code(Group const& from, Code const& x, std::vector<Code> const& images, Group const& to);

}  // namespace htact
