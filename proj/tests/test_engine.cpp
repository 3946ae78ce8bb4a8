#include "support.hpp"

#include <htact/certificate.hpp>

#include <doctest.h>

#include <set>

using namespace htact;

namespace {

struct Built {
  ProblemFile p;
  BuildTarget t;
};

Built target(std::string const& name) {
  auto p = support::fixture(name);
  auto t = build_target(p);
  return {std::move(p), std::move(t)};
}

bool replays(IntertwinerState const& st, Step const& s) {
  if (s.kind == Step::Kind::Faithfulness) return !(st.evaluate_pi(s.element, s.witness) == s.witness);
  for (std::size_t k = 0; k < s.x.size(); ++k)
    if (!(st.evaluate_pi(s.mover, s.x[k]) == s.y[k])) return false;
  return true;
}

}  // namespace

TEST_CASE("transitivity preconditions") {
  auto b = target("free-zz");
  Engine e(b.t.space, b.p.budget);
  Point const p{Code{}, 0}, q{b.t.space->gamma()->parse("a"), 0};
  CHECK_THROWS_AS(e.extend_transitivity({p, p}, {p, q}), Error);
  CHECK_THROWS_AS(e.extend_transitivity({p, q}, {q, q}), Error);
  CHECK_THROWS_AS(e.extend_transitivity({p}, {p, q}), Error);
  CHECK(e.steps().empty());
}

TEST_CASE("single transitivity steps") {
  SUBCASE("HNN over Free(2)") {
    auto b = target("hnn-f2");
    Engine e(b.t.space, b.p.budget, true);
    auto const& G = *b.t.space->gamma();
    auto s = e.extend_transitivity({{Code{}, 0}}, {{G.parse("b"), 0}});
    REQUIRE_FALSE(s.deferred);
    CHECK(e.state().evaluate_pi(s.mover, {Code{}, 0}) == Point{G.parse("b"), 0});
    auto same = e.extend_transitivity({{Code{}, 0}}, {{Code{}, 0}});
    REQUIRE_FALSE(same.deferred);
    CHECK(replays(e.state(), same));
    CHECK(replays(e.state(), s));
    CHECK(e.invariants().violations.empty());
  }
  SUBCASE("Z * Z") {
    auto b = target("free-zz");
    Engine e(b.t.space, b.p.budget, true);
    auto const& G = *b.t.space->gamma();
    auto s = e.extend_transitivity({{Code{}, 0}}, {{G.parse("a"), 0}});
    REQUIRE_FALSE(s.deferred);
    CHECK(e.state().evaluate_pi(s.mover, {Code{}, 0}) == Point{G.parse("a"), 0});
    CHECK(e.invariants().violations.empty());
  }
  SUBCASE("surface group, two pairs") {
    auto b = target("pi1-sigma2");
    Engine e(b.t.space, b.p.budget, true);
    auto const& G = *b.t.space->gamma();
    std::vector<Point> x{{Code{}, 0}, {G.parse("a1"), 0}};
    std::vector<Point> y{{G.parse("b2"), 0}, {G.parse("a2 b1"), 0}};
    auto s = e.extend_transitivity(x, y);
    REQUIRE_FALSE(s.deferred);
    CHECK(s.fresh.size() == 2);
    CHECK(s.batch.size() == 8);
    CHECK(replays(e.state(), s));
    CHECK(e.invariants().violations.empty());
  }
}

TEST_CASE("faithfulness steps") {
  SUBCASE("amalgam") {
    auto b = target("free-zz");
    Engine e(b.t.space, b.p.budget);
    auto const& G = *b.t.space->gamma();
    auto s = e.ensure_faithful(G.parse("a"));
    CHECK(s.witness.g.empty());
    CHECK(e.state().evaluate_pi(s.element, s.witness) == Point{G.parse("a"), s.witness.level});
    CHECK(e.state().is_frozen(s.witness.level));
    auto g3 = G.parse("a b a");
    auto s3 = e.ensure_faithful(g3);
    CHECK(s3.witness.level != s.witness.level);
    CHECK(e.state().evaluate_pi(g3, s3.witness) == Point{g3, s3.witness.level});
    CHECK_THROWS_AS(e.ensure_faithful({}), Error);
  }
  SUBCASE("hnn") {
    auto b = target("hnn-f2");
    Engine e(b.t.space, b.p.budget);
    auto const& G = *b.t.space->gamma();
    auto s = e.ensure_faithful(G.parse("t"));
    CHECK(e.state().evaluate_pi(s.element, s.witness) == Point{G.parse("t"), s.witness.level});
  }
}

TEST_CASE("empty budget gives an empty certificate") {
  auto b = target("free-zz");
  auto budget = b.p.budget;
  budget.steps = 0;
  Engine e(b.t.space, budget);
  auto c = e.run_schedule(b.p.hash());
  CHECK(c.steps.empty());
  CHECK(c.commits.empty());
  CHECK(c.frozen.empty());
  CHECK(verify_certificate(b.t.space, c).ok);
}

TEST_CASE("schedule tuples are injective and distinct") {
  for (std::size_t n : {1u, 2u, 3u}) {
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t r = 0; r < 500; ++r) {
      auto t = Engine::injective_tuple(n, r);
      REQUIRE(t.size() == n);
      REQUIRE(std::set<std::uint64_t>(t.begin(), t.end()).size() == n);
      REQUIRE(seen.insert(t).second);
    }
  }
}

// Full schedules with every invariant checked after each step.
TEST_CASE("schedules on the main fixtures") {
  for (auto const& name : {"free-zz", "pi1-sigma2", "hnn-f2", "gaussian-hnn"}) {
    CAPTURE(name);
    auto b = target(name);
    Engine e(b.t.space, b.p.budget, true);
    e.set_sample_size(200);
    auto c = e.run_schedule(b.p.hash());
    CHECK(c.steps.size() == 50);
    CHECK(c.deferred() == 0);
    auto const& inv = e.invariants();
    CHECK(inv.steps_checked == 50);
    CHECK(inv.violations.empty());
    CHECK(inv.equivariance > 0);
    CHECK(inv.bijectivity > 0);
    CHECK(inv.persistence > 0);
    for (auto const& s : c.steps) CHECK(replays(e.state(), s));
    auto rep = verify_certificate(b.t.space, c);
    CHECK(rep.ok);

    Engine again(build_target(b.p).space, b.p.budget);
    CHECK(emit_certificate(again.run_schedule(b.p.hash())) == emit_certificate(c));
  }
}

TEST_CASE("tampered certificates are rejected") {
  auto b = target("pi1-sigma2");
  Engine e(b.t.space, b.p.budget);
  auto c = e.run_schedule(b.p.hash());
  REQUIRE(verify_certificate(b.t.space, c).ok);

  auto first = [&](auto pred) -> Step& {
    for (auto& s : c.steps)
      if (pred(s)) return s;
    FAIL("no such step");
    return c.steps.front();
  };
  SUBCASE("batch target") {
    auto& s = first([](Step const& s) { return s.batch.size() >= 2; });
    std::swap(s.batch[0].second, s.batch[1].second);
    s.batch[0].second.level += 1;
    auto rep = verify_certificate(b.t.space, c);
    CHECK_FALSE(rep.ok);
  }
  SUBCASE("faithfulness witness on a committed level") {
    auto& s = first([](Step const& s) { return s.kind == Step::Kind::Faithfulness; });
    s.witness.level = 0;
    CHECK_FALSE(verify_certificate(b.t.space, c).ok);
  }
  SUBCASE("missing protection") {
    auto& s = first([](Step const& s) { return !s.protect.empty(); });
    s.protect.pop_back();
    CHECK_FALSE(verify_certificate(b.t.space, c).ok);
  }
  SUBCASE("mover") {
    auto& s = first([](Step const& s) { return s.kind == Step::Kind::Transitivity && !s.deferred; });
    s.mover = b.t.space->gamma()->multiply(s.mover, b.t.space->gamma()->generator(0));
    CHECK_FALSE(verify_certificate(b.t.space, c).ok);
  }
}

TEST_CASE("certificates survive serialization") {
  auto b = target("hnn-f2");
  Engine e(b.t.space, b.p.budget);
  auto c = e.run_schedule(b.p.hash());
  auto text = emit_certificate(c);
  auto back = certificate_from_json(nlohmann::json::parse(text));
  CHECK(emit_certificate(back) == text);
  CHECK(verify_certificate(b.t.space, back).ok);
  CHECK(text.back() == '\n');
}
