#include "support.hpp"

#include <htact/action_space.hpp>

#include <doctest.h>

using namespace htact;

namespace {

OrbitSpacePtr space_of(std::string const& name) { return build_target(support::fixture(name)).space; }

Point random_point(Group const& g, std::mt19937_64& rng, std::int64_t levels = 4) {
  std::uniform_int_distribution<std::int64_t> lv(0, levels - 1);
  return {support::random_element(g, 6, rng), lv(rng)};
}

}  // namespace

TEST_CASE("default images") {
  auto zz = space_of("free-zz");
  auto const& G = *zz->gamma();
  Point x{G.parse("a b"), 7};
  CHECK(zz->default_image(x) == x);

  auto hnn = space_of("hnn-f2");
  auto const& H = *hnn->gamma();
  CHECK(hnn->default_image({H.parse("a"), 3}) == Point{H.parse("t a"), 3});
  CHECK(hnn->default_inverse({H.parse("t a"), 3}) == Point{H.parse("a"), 3});
  // default(sigma x) = theta(sigma) default(x)
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto p = random_point(H, rng);
    CHECK(hnn->default_image(hnn->act(H.parse("a"), p)) == hnn->act(H.parse("b"), hnn->default_image(p)));
  }
}

TEST_CASE("orbit representatives") {
  auto sp = space_of("pi1-sigma2");
  auto const& G = *sp->gamma();
  std::mt19937_64 rng(2);
  Code const c = G.parse("a1 b1 a1^-1 b1^-1");
  for (int i = 0; i < 200; ++i) {
    auto g = support::random_element(G, 5, rng);
    auto s = sp->source_split({g, 2});
    CHECK(sp->source_split(s.rep).rep == s.rep);
    CHECK(sp->source_split({G.multiply(c, g), 2}).rep == s.rep);
    CHECK_FALSE(sp->source_split({g, 3}).rep == s.rep);
    CHECK(sp->act(sp->psi().apply(s.e), s.rep) == Point{g, 2});
  }
}

TEST_CASE("evaluate_w on an empty state") {
  auto sp = space_of("free-zz");
  IntertwinerState st(sp);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto p = random_point(*sp->gamma(), rng);
    CHECK(st.evaluate_w(p) == p);
    CHECK(st.evaluate_pi({}, p) == p);
  }
}

TEST_CASE("committed orbits follow the anchor and equivariance") {
  auto sp = space_of("pi1-sigma2");
  auto const& G = *sp->gamma();
  IntertwinerState st(sp);
  Point const x0{Code{}, 0}, x1{G.parse("a1"), 0};
  st.commit_batch({{x0, x1}, {x1, x0}});
  CHECK(st.commits().size() == 2);
  Code const c = G.parse("a1 b1 a1^-1 b1^-1");
  CHECK(st.evaluate_w(x0) == x1);
  CHECK(st.evaluate_w(sp->act(c, x0)) == sp->act(c, x1));
  CHECK(st.evaluate_w(x1) == x0);

  // batches that are not permutations of default images are rejected
  IntertwinerState bad(sp);
  CHECK_THROWS_AS(bad.commit_batch({{x0, x1}}), Error);
  // committed orbits cannot be recommitted
  CHECK_THROWS_AS(st.commit_batch({{x0, x0}}), Error);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    auto p = random_point(G, rng);
    auto y = st.evaluate_w(p);
    REQUIRE(st.evaluate_w_inverse(y) == p);
    REQUIRE(st.evaluate_w(st.evaluate_w_inverse(p)) == p);
  }
}

TEST_CASE("evaluate_pi is a homomorphism") {
  for (auto const& name : {"pi1-sigma2", "hnn-f2"}) {
    auto sp = space_of(name);
    auto const& G = *sp->gamma();
    IntertwinerState st(sp);
    std::mt19937_64 rng(5);
    Point const x0{Code{}, 0};
    auto y = sp->default_image(x0);
    Point const x1{G.generator(1), 0};  // outside the edge subgroup
    auto y1 = sp->default_image(x1);
    st.commit_batch({{x0, y1}, {x1, y}});
    for (int i = 0; i < 300; ++i) {
      auto g = support::random_element(G, 5, rng);
      auto h = support::random_element(G, 5, rng);
      auto p = random_point(G, rng, 2);
      REQUIRE(st.evaluate_pi(G.multiply(g, h), p) == st.evaluate_pi(g, st.evaluate_pi(h, p)));
      // above the ceiling the action is the free one
      Point high{p.g, st.ceiling() + 1};
      REQUIRE(st.evaluate_pi(g, high) == sp->act(g, high));
    }
  }
}

TEST_CASE("fresh orbit allocation") {
  auto sp = space_of("free-zz");
  auto const& G = *sp->gamma();
  IntertwinerState st(sp);
  auto two = st.allocate_fresh_orbits(2, {});
  REQUIRE(two.size() == 2);
  CHECK(two[0] == Point{Code{}, 0});
  CHECK(two[1] == Point{G.parse("a"), 0});
  CHECK(st.ceiling() == 0);

  auto first = st.allocate_fresh_orbits(6, {});
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<Point> avoid(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(k));
    auto next = st.allocate_fresh_orbits(2, avoid);
    CHECK(next[0] == first[k]);
    CHECK(next[1] == first[k + 1]);
  }

  IntertwinerState fz(sp);
  fz.freeze(0);
  auto f = fz.allocate_fresh_orbits(1, {});
  CHECK(f[0].level == 1);
  CHECK(fz.lowest_open_level(0) == 1);
}
