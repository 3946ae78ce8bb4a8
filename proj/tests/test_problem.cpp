#include "support.hpp"

#include <htact/certificate.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace htact;

namespace {

std::vector<SchemaIssue> issues_of(std::string_view text) {
  try {
    parse_problem_text(text);
  } catch (ProblemError const& e) {
    return e.issues();
  }
  return {};
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (auto const& f : std::filesystem::directory_iterator(HTACT_FIXTURES))
    if (f.path().extension() == ".json") out.push_back(f.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("schema errors carry lines") {
  auto empty = issues_of("");
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].line == 1);
  CHECK(empty[0].message == "missing groups");

  auto bad = issues_of(R"({
  "groups": {
    "F": {"kind": "bogus"}
  },
  "bounds": {"tuple_max": "two"}
})");
  REQUIRE(bad.size() == 2);
  CHECK(bad[0].line == 3);
  CHECK(bad[0].path == "/groups/F/kind");
  CHECK(bad[1].line == 5);
  CHECK(bad[1].path == "/bounds/tuple_max");

  auto unresolved = issues_of(R"({
  "groups": {
    "F": {"kind": "free", "rank": 2},
    "G": {"kind": "hnn", "alpha": "nope", "beta": "nope"}
  }
})");
  REQUIRE_FALSE(unresolved.empty());
  CHECK(unresolved[0].line == 4);
  CHECK(unresolved[0].path == "/groups/G/alpha");
  CHECK(unresolved[0].message == "unresolved embedding nope");

  auto cyclic = issues_of(R"({
  "groups": {
    "G": {"kind": "amalgam", "left": "l", "right": "l"}
  },
  "embeddings": {
    "l": {"source": "G", "target": "G", "images": []}
  }
})");
  REQUIRE_FALSE(cyclic.empty());
  CHECK(cyclic[0].message == "cyclic definition");

  CHECK_FALSE(issues_of(R"({"groups": {}, )").empty());
  CHECK_FALSE(issues_of(R"({"groups": {"Z": {"kind": "free", "rank": 1, "labels": ["a", "b"]}}})").empty());
  CHECK_FALSE(issues_of(R"({"groups": {"Z": {"kind": "free", "rank": 1, "colour": 3}}})").empty());
  CHECK_THROWS_AS(parse_problem("/nonexistent/problem.json"), Error);
}

TEST_CASE("bundled fixtures parse") {
  auto pi = support::fixture("pi1-sigma2");
  REQUIRE(pi.graph);
  CHECK(pi.graph->vertices().size() == 2);
  CHECK(pi.graph->edges().size() == 1);

  auto ga = support::fixture("gaussian-hnn");
  REQUIRE(ga.graph);
  CHECK(ga.graph->vertices().size() == 1);
  REQUIRE(ga.graph->edges().size() == 1);
  CHECK(ga.graph->edges()[0].source == ga.graph->edges()[0].range);
  CHECK(ga.budget.steps == 50);

  auto au = support::fixture("audits");
  CHECK(au.audits.size() == 4);
  CHECK(au.actions.size() == 3);
  CHECK(au.bounds.witness_radius == 4);
}

TEST_CASE("parse print parse is idempotent") {
  auto names = fixture_names();
  CHECK(names.size() >= 10);
  for (auto const& n : names) {
    CAPTURE(n);
    auto p = support::fixture(n);
    auto text = print_problem(p);
    auto again = parse_problem_text(text);
    CHECK(print_problem(again) == text);
    CHECK(again.hash() == p.hash());
  }
  CHECK(support::fixture("free-zz").hash() != support::fixture("hnn-f2").hash());
}

TEST_CASE("empty certificate is a fixed document") {
  auto const text = emit_certificate(Certificate{});
  CHECK(text == R"({
  "budget": {
    "steps": 50,
    "wall_ms": 0,
    "witness_radius": 4096
  },
  "format": "htact-certificate/1",
  "group": "",
  "mode": "amalgam",
  "problem_hash": 0,
  "state": {
    "ceiling": 0,
    "commits": [],
    "frozen": []
  },
  "steps": [],
  "summary": {
    "deferred": 0,
    "discharged": 0
  }
}
)");
  CHECK(emit_certificate(certificate_from_json(nlohmann::json::parse(text))) == text);
}

TEST_CASE("certificate files round trip and verify") {
  auto p = support::fixture("pi1-sigma2");
  auto t = build_target(p);
  Engine e(t.space, p.budget);
  auto cert = e.run_schedule(p.hash());
  auto path = std::filesystem::temp_directory_path() / "htact-roundtrip.json";
  write_certificate(cert, path);
  auto back = load_certificate(path);
  std::filesystem::remove(path);
  CHECK(emit_certificate(back) == emit_certificate(cert));
  CHECK(back.problem_hash == p.hash());
  CHECK(verify_certificate(build_target(p).space, back).ok);

  auto wrong = nlohmann::json::parse(emit_certificate(cert));
  wrong["format"] = "something-else";
  CHECK_THROWS_AS(certificate_from_json(wrong), Error);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
