#include <htact/graph_of_groups.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace htact {

void GraphOfGroups::add_vertex(std::string id, GroupPtr group) {
  if (id.empty()) throw Error("graph: empty vertex id");
  if (has_vertex(id)) throw Error("graph: duplicate vertex " + id);
  if (!group) throw Error("graph: vertex " + id + " has no group");
  if (base_.empty()) base_ = id;
  vertices_.emplace_back(std::move(id), std::move(group));
}

void GraphOfGroups::add_edge(GraphEdge e) {
  if (std::any_of(edges_.begin(), edges_.end(), [&](GraphEdge const& o) { return o.id == e.id; }))
    throw Error("graph: duplicate edge " + e.id);
  if (!has_vertex(e.source)) throw Error("graph: edge " + e.id + " has unknown source " + e.source);
  if (!has_vertex(e.range)) throw Error("graph: edge " + e.id + " has unknown range " + e.range);
  if (!e.s || !e.r) throw Error("graph: edge " + e.id + " lacks an embedding");
  if (!e.group) e.group = e.s->source();
  if (e.s->source() != e.group || e.r->source() != e.group)
    throw Error("graph: edge " + e.id + " embeddings do not start at the edge group");
  if (e.s->target() != vertex(e.source)) throw Error("graph: edge " + e.id + ": s does not land in " + e.source);
  if (e.r->target() != vertex(e.range)) throw Error("graph: edge " + e.id + ": r does not land in " + e.range);
  edges_.push_back(std::move(e));
}

void GraphOfGroups::set_base(std::string const& id) {
  if (!has_vertex(id)) throw Error("graph: unknown base vertex " + id);
  base_ = id;
}

std::string const& GraphOfGroups::base() const {
  if (base_.empty()) throw Error("graph: no vertices");
  return base_;
}

bool GraphOfGroups::has_vertex(std::string const& id) const {
  return std::any_of(vertices_.begin(), vertices_.end(), [&](auto const& v) { return v.first == id; });
}

GroupPtr const& GraphOfGroups::vertex(std::string const& id) const {
  for (auto const& v : vertices_)
    if (v.first == id) return v.second;
  throw Error("graph: unknown vertex " + id);
}

GraphEdge const& GraphOfGroups::edge(std::string const& id) const {
  for (auto const& e : edges_)
    if (e.id == id) return e;
  throw Error("graph: unknown edge " + id);
}

namespace {

std::set<std::string> reachable(GraphOfGroups const& g, std::string const& from) {
  std::set<std::string> seen{from};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto const& e : g.edges()) {
      std::string const* next = e.source == v ? &e.range : e.range == v ? &e.source : nullptr;
      if (next && seen.insert(*next).second) queue.push_back(*next);
    }
  }
  return seen;
}

EmbeddingPtr lift_embedding(std::string name, Embedding const& e, Pi1 const& pi, GraphOfGroups const& g,
                            std::string const& vertex) {
  std::vector<Code> images;
  for (auto const& im : e.images()) images.push_back(pi.lift(g, vertex, im));
  return std::make_shared<Embedding>(std::move(name), e.source(), pi.group, std::move(images), 0, e.search_bound());
}

void include_all(Pi1 const& from, CompositeGroup const& into, int factor, Pi1& out) {
  for (auto const& [v, imgs] : from.vertex_images) {
    auto& dst = out.vertex_images[v];
    for (auto const& c : imgs) dst.push_back(into.include(factor, c));
  }
  for (auto const& [e, c] : from.edge_letters) out.edge_letters[e] = into.include(factor, c);
  out.tree.insert(out.tree.end(), from.tree.begin(), from.tree.end());
}

}  // namespace

bool GraphOfGroups::connected() const { return reachable(*this, base()).size() == vertices_.size(); }

GraphOfGroups GraphOfGroups::without_edge(std::string const& id) const {
  edge(id);
  GraphOfGroups out = *this;
  std::erase_if(out.edges_, [&](GraphEdge const& e) { return e.id == id; });
  return out;
}

GraphOfGroups GraphOfGroups::component(std::string const& v) const {
  auto keep = reachable(*this, v);
  GraphOfGroups out;
  for (auto const& [id, grp] : vertices_)
    if (keep.contains(id)) out.add_vertex(id, grp);
  for (auto const& e : edges_)
    if (keep.contains(e.source)) out.edges_.push_back(e);
  out.base_ = keep.contains(base_) ? base_ : v;
  return out;
}

std::vector<std::string> spanning_tree(GraphOfGroups const& g) {
  if (!g.connected()) throw Error("graph: not connected");
  std::set<std::string> seen{g.base()};
  std::deque<std::string> queue{g.base()};
  std::vector<std::string> tree;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto const& e : g.edges()) {
      std::string const* next = e.source == v ? &e.range : e.range == v ? &e.source : nullptr;
      if (next && seen.insert(*next).second) {
        tree.push_back(e.id);
        queue.push_back(*next);
      }
    }
  }
  return tree;
}

Code map_code(Group const& from, Code const& x, std::vector<Code> const& images, Group const& to) {
  Code out;
  for (auto const& l : from.word(x)) out = to.multiply(out, to.power(images.at(static_cast<std::size_t>(l.gen)), l.exp));
  return out;
}

Code Pi1::lift(GraphOfGroups const& g, std::string const& vertex, Code const& x) const {
  return map_code(*g.vertex(vertex), x, vertex_images.at(vertex), *group);
}

OrbitSpacePtr ReducedProblem::orbit_space() const {
  if (mode == Mode::Hnn) return std::make_shared<OrbitSpace>(hnn);
  return std::make_shared<OrbitSpace>(amalgam);
}

std::string ReducedProblem::describe() const {
  auto join = [](std::vector<std::string> const& v) {
    std::string s;
    for (auto const& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
  };
  if (mode == Mode::Hnn) {
    auto const& base = *hnn->base();
    return "HNNProblem edge=" + edge + " base=" + std::string(to_string(base.kind())) + " stable=" +
           hnn->format(hnn->stable_letter());
  }
  return "AmalgamProblem edge=" + edge + " left={" + join(left) + "} left_kind=" +
         std::string(to_string(amalgam->factor(0)->kind())) + " right={" + join(right) +
         "} right_kind=" + std::string(to_string(amalgam->factor(1)->kind()));
}

namespace {

Pi1 vertex_pi1(GraphOfGroups const& g) {
  Pi1 p;
  auto const& [id, grp] = g.vertices().front();
  p.group = grp;
  auto& imgs = p.vertex_images[id];
  for (std::size_t i = 0; i < grp->num_generators(); ++i) imgs.push_back(grp->generator(i));
  return p;
}

}  // namespace

ReducedProblem reduce_edge(GraphOfGroups const& g, std::string const& id) {
  auto const& e = g.edge(id);
  if (!g.connected()) throw Error("graph: not connected");
  auto rest = g.without_edge(id);
  ReducedProblem out;
  out.edge = id;
  if (rest.connected()) {
    auto sub = fundamental_group(rest);
    auto alpha = lift_embedding("r_" + id, *e.r, sub, rest, e.range);
    auto beta = lift_embedding("s_" + id, *e.s, sub, rest, e.source);
    auto G = std::make_shared<HnnGroup>(alpha, beta, id);
    G->set_name("HNN(" + sub.group->name() + ", " + id + ")");
    out.mode = Mode::Hnn;
    out.hnn = G;
    out.pi1.group = G;
    include_all(sub, *G, 0, out.pi1);
    out.pi1.edge_letters[id] = G->stable_letter();
    return out;
  }
  auto left = rest.component(e.source);
  auto right = rest.component(e.range);
  auto p1 = fundamental_group(left);
  auto p2 = fundamental_group(right);
  auto l = lift_embedding("s_" + id, *e.s, p1, left, e.source);
  auto r = lift_embedding("r_" + id, *e.r, p2, right, e.range);
  auto G = std::make_shared<AmalgamGroup>(l, r);
  G->set_name("(" + p1.group->name() + " *" + id + " " + p2.group->name() + ")");
  out.mode = Mode::Amalgam;
  out.amalgam = G;
  out.pi1.group = G;
  include_all(p1, *G, 0, out.pi1);
  include_all(p2, *G, 1, out.pi1);
  out.pi1.edge_letters[id] = Code{};
  out.pi1.tree.push_back(id);
  for (auto const& v : left.vertices()) out.left.push_back(v.first);
  for (auto const& v : right.vertices()) out.right.push_back(v.first);
  return out;
}

std::string select_edge(GraphOfGroups const& g) {
  if (g.edges().empty()) throw Error("graph: no edges to reduce");
  for (auto const& e : g.edges())
    if (!g.without_edge(e.id).connected()) return e.id;
  return g.edges().front().id;
}

Pi1 fundamental_group(GraphOfGroups const& g) {
  if (g.vertices().empty()) throw Error("graph: no vertices");
  if (g.edges().empty()) {
    if (g.vertices().size() != 1) throw Error("graph: not connected");
    return vertex_pi1(g);
  }
  auto tree = spanning_tree(g);
  for (auto const& e : g.edges())
    if (std::find(tree.begin(), tree.end(), e.id) == tree.end()) return reduce_edge(g, e.id).pi1;
  return reduce_edge(g, tree.front()).pi1;
}

Status HypothesisReport::overall() const {
  Status s = Status::Pass;
  for (auto const& c : checks) {
    if (c.status == Status::Fail) return Status::Fail;
    if (c.status == Status::Undecided && c.hypothesis != "structural") s = Status::Undecided;
  }
  return s;
}

HypothesisReport validate_main_hypotheses(GraphOfGroups const& g, AuditBounds const& bounds) {
  HypothesisReport rep;
  rep.checks.push_back({"graph", "edges", g.edges().empty() ? Status::Fail : Status::Pass,
                        std::to_string(g.edges().size()) + " geometric edges", std::nullopt});
  rep.checks.push_back({"graph", "connected", g.connected() ? Status::Pass : Status::Fail, "", std::nullopt});
  for (auto const& [id, grp] : g.vertices()) {
    bool inf = grp->is_infinite();
    rep.checks.push_back({id, "infinite", inf ? Status::Pass : Status::Fail,
                          std::string(to_string(grp->kind())) + (inf ? " is infinite" : " is finite"), std::nullopt});
  }
  for (auto const& e : g.edges()) {
    for (auto const& [side, emb] : {std::pair{"s", e.s}, std::pair{"r", e.r}}) {
      auto subject = e.id + "." + side;
      auto v = audit_hcf(*emb, bounds);
      rep.checks.push_back({subject, "hcf", v.status, v.rule + ": " + v.detail, v});
      auto c = certify_structural(*emb, bounds);
      rep.checks.push_back({subject, "structural", c.status, c.detail, c});
    }
  }
  return rep;
}

}  // namespace htact
