#include "support.hpp"

#include <htact/groups.hpp>

#include <doctest.h>

#include <functional>

using namespace htact;

namespace {

GraphOfGroups graph_of(std::string const& name) { return *support::fixture(name).graph; }

// A closed path at the base vertex in the fundamental groupoid: vertex-group
// generators at the current vertex and edge traversals.
struct Move {
  std::string vertex;  // vertex generator when edge is empty
  int gen = 0;
  std::string edge;
  int exp = 1;
};

Code image(Pi1 const& pi, GraphOfGroups const& g, std::vector<Move> const& path) {
  auto const& G = *pi.group;
  Code out;
  for (auto const& l : path) {
    Code c = l.edge.empty() ? pi.lift(g, l.vertex, g.vertex(l.vertex)->generator(static_cast<std::size_t>(l.gen)))
                            : pi.edge_letters.at(l.edge);
    out = G.multiply(out, l.exp > 0 ? c : G.inverse(c));
  }
  return out;
}

void closed_paths(GraphOfGroups const& g, std::size_t max_len, std::function<void(std::vector<Move> const&)> const& fn) {
  std::vector<Move> path;
  std::function<void(std::string const&)> walk = [&](std::string const& at) {
    if (at == g.base()) fn(path);
    if (path.size() == max_len) return;
    for (int k = 0; k < static_cast<int>(g.vertex(at)->num_generators()); ++k)
      for (int e : {1, -1}) {
        path.push_back({at, k, "", e});
        walk(at);
        path.pop_back();
      }
    for (auto const& e : g.edges()) {
      if (e.source == at) {
        path.push_back({"", 0, e.id, 1});
        walk(e.range);
        path.pop_back();
      }
      if (e.range == at) {
        path.push_back({"", 0, e.id, -1});
        walk(e.source);
        path.pop_back();
      }
    }
  };
  walk(g.base());
}

}  // namespace

TEST_CASE("spanning trees") {
  CHECK(spanning_tree(graph_of("gaussian-hnn")).empty());
  CHECK(spanning_tree(graph_of("pi1-sigma2")) == std::vector<std::string>{"e"});
  CHECK(spanning_tree(graph_of("theta")) == std::vector<std::string>{"e1"});

  GraphOfGroups split;
  split.add_vertex("u", make_trivial());
  split.add_vertex("v", make_trivial());
  CHECK_FALSE(split.connected());
  CHECK_THROWS_AS(spanning_tree(split), Error);
}

TEST_CASE("graph construction is validated") {
  auto g = graph_of("pi1-sigma2");
  auto e = g.edges().front();
  CHECK_THROWS_AS(g.add_edge(e), Error);  // duplicate id
  e.id = "other";
  e.range = "nowhere";
  CHECK_THROWS_AS(g.add_edge(e), Error);
  e.range = e.source;  // r lands in the wrong vertex group
  CHECK_THROWS_AS(g.add_edge(e), Error);
  CHECK_THROWS_AS(g.set_base("nowhere"), Error);
  CHECK_THROWS_AS(reduce_edge(g, "nowhere"), Error);
}

TEST_CASE("reductions") {
  auto pi = reduce_edge(graph_of("pi1-sigma2"), select_edge(graph_of("pi1-sigma2")));
  CHECK(pi.mode == Mode::Amalgam);
  CHECK(pi.left == std::vector<std::string>{"v1"});
  CHECK(pi.right == std::vector<std::string>{"v2"});
  CHECK(pi.amalgam->factor(0)->kind() == GroupKind::Free);

  auto ga = reduce_edge(graph_of("gaussian-hnn"), "t");
  CHECK(ga.mode == Mode::Hnn);
  CHECK(ga.hnn->base()->kind() == GroupKind::Semidirect);
  CHECK(ga.describe() == "HNNProblem edge=t base=semidirect stable=t");

  auto th = reduce_edge(graph_of("theta"), select_edge(graph_of("theta")));
  CHECK(th.mode == Mode::Hnn);
  CHECK(th.edge == "e1");
  CHECK(th.hnn->base()->kind() == GroupKind::Amalgam);
  CHECK(th.hnn->base()->name() == "(F1 *e2 F2)");

  auto fv = fundamental_group(graph_of("finite-vertex"));
  CHECK(fv.group->kind() == GroupKind::Amalgam);

  GraphOfGroups single;
  auto Z = make_cyclic(3);
  single.add_vertex("v", Z);
  CHECK(fundamental_group(single).group == Z);
}

TEST_CASE("case dichotomy") {
  for (auto const& name : {"pi1-sigma2", "gaussian-hnn", "theta", "finite-index-edge", "finite-vertex"}) {
    auto g = graph_of(name);
    for (auto const& e : g.edges()) {
      auto r = reduce_edge(g, e.id);
      bool const connected = g.without_edge(e.id).connected();
      CHECK((r.mode == Mode::Hnn) == connected);
      CHECK(bool(r.hnn) == connected);
      CHECK(bool(r.amalgam) == !connected);
    }
  }
}

TEST_CASE("tree edges collapse") {
  for (auto const& name : {"pi1-sigma2", "theta", "finite-vertex"}) {
    auto g = graph_of(name);
    auto pi = fundamental_group(g);
    for (auto const& e : pi.tree) CHECK(pi.edge_letters.at(e).empty());
    for (auto const& e : g.edges())
      if (std::find(pi.tree.begin(), pi.tree.end(), e.id) == pi.tree.end()) CHECK_FALSE(pi.edge_letters.at(e.id).empty());
  }
}

// Every edge relation s(x) = e r(x) e^-1 holds in every presentation.
TEST_CASE("edge relations hold") {
  for (auto const& name : {"pi1-sigma2", "gaussian-hnn", "theta"}) {
    auto g = graph_of(name);
    for (auto const& e0 : g.edges()) {
      auto pi = reduce_edge(g, e0.id).pi1;
      auto const& G = *pi.group;
      for (auto const& e : g.edges()) {
        for (std::size_t k = 0; k < e.group->num_generators(); ++k) {
          auto x = e.group->generator(k);
          auto lhs = pi.lift(g, e.source, e.s->apply(x));
          auto t = pi.edge_letters.at(e.id);
          auto rhs = G.multiply(G.multiply(t, pi.lift(g, e.range, e.r->apply(x))), G.inverse(t));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

// Reducing at any edge gives the same group as the default fundamental group:
// closed groupoid paths are trivial in one presentation iff in the other.
TEST_CASE("reductions agree on the word problem") {
  for (auto const& name : {"pi1-sigma2", "gaussian-hnn", "theta"}) {
    CAPTURE(name);
    auto g = graph_of(name);
    auto whole = fundamental_group(g);
    std::vector<Pi1> alts;
    for (auto const& e : g.edges()) alts.push_back(reduce_edge(g, e.id).pi1);
    std::size_t paths = 0, trivial = 0;
    closed_paths(g, 5, [&](std::vector<Move> const& p) {
      ++paths;
      bool const t = image(whole, g, p).empty();
      trivial += t;
      for (auto const& a : alts) REQUIRE(image(a, g, p).empty() == t);
    });
    CHECK(paths > 1000);
    CHECK(trivial > 0);
  }
}

TEST_CASE("main hypotheses") {
  auto bounds = AuditBounds{};
  auto ok = validate_main_hypotheses(graph_of("pi1-sigma2"), bounds);
  CHECK(ok.overall() == Status::Pass);
  for (auto const& c : ok.checks) CHECK(c.status == Status::Pass);

  auto fv = validate_main_hypotheses(graph_of("finite-vertex"), bounds);
  CHECK(fv.overall() == Status::Fail);
  bool flagged = false;
  for (auto const& c : fv.checks)
    if (c.subject == "finite" && c.hypothesis == "infinite") flagged = c.status == Status::Fail;
  CHECK(flagged);

  auto fi = validate_main_hypotheses(graph_of("finite-index-edge"), bounds);
  CHECK(fi.overall() == Status::Fail);
  bool covering = false;
  for (auto const& c : fi.checks)
    if (c.subject == "e.s" && c.hypothesis == "hcf" && c.verdict) {
      covering = c.status == Status::Fail && c.verdict->rule == "finite-index" && c.verdict->pieces.size() == 1;
      CHECK(recheck_hcf(*graph_of("finite-index-edge").edge("e").s, *c.verdict));
    }
  CHECK(covering);
}
