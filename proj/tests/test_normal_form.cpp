#include "oracles.hpp"
#include "support.hpp"

#include <htact/normal_form.hpp>

#include <doctest.h>

using namespace htact;

namespace {

std::shared_ptr<HnnGroup const> task_hnn(std::string const& name) {
  auto p = support::fixture(name);
  return std::dynamic_pointer_cast<HnnGroup const>(p.group(p.task_group));
}

std::shared_ptr<AmalgamGroup const> task_amalgam(std::string const& name) {
  auto p = support::fixture(name);
  return std::dynamic_pointer_cast<AmalgamGroup const>(p.group(p.task_group));
}

}  // namespace

TEST_CASE("BS(1,2) normal forms") {
  auto G = task_hnn("bs12");
  REQUIRE(G);
  CHECK(G->parse("t a t^-1") == G->parse("a^2"));
  CHECK(G->syllable_length(G->parse("t a t^-1")) == 1);
  auto c = G->parse("t^-1 a t");
  CHECK(G->stable_letter_count(c) == 2);
  CHECK(G->format(c) == "t^-1 a t");
  CHECK(G->parse("t t^-1").empty());
  CHECK(G->parse("t^-1 a^2 t") == G->parse("a"));
}

TEST_CASE("Z2 * Z3 normal forms") {
  auto G = task_amalgam("z2-z3");
  REQUIRE(G);
  auto c = G->parse("x y x y x y");
  CHECK_FALSE(c.empty());
  CHECK(G->syllable_length(c) == 6);
  CHECK(G->parse("x x").empty());
  CHECK(G->parse("y y y").empty());
  CHECK(G->syllable_length(G->parse("y^2 x")) == 2);
}

TEST_CASE("surface group relation") {
  auto p = support::fixture("pi1-sigma2");
  auto G = fundamental_group(*p.graph).group;
  CHECK(G->parse("a1 b1 a1^-1 b1^-1 b2 a2 b2^-1 a2^-1").empty());
  CHECK_FALSE(G->parse("a1 b1 a1^-1 b1^-1").empty());
  auto comp = std::dynamic_pointer_cast<CompositeGroup const>(G);
  REQUIRE(comp);
  CHECK(comp->syllable_length(G->parse("a1 a2")) == 2);
  CHECK(comp->syllable_length(G->parse("a1 b1 a1^-1 b1^-1")) == 1);  // edge element, one syllable
}

TEST_CASE("word problem agrees with matrix oracles") {
  auto bs = task_hnn("bs12");
  auto a = oracle::agree_on_all_words<oracle::Affine>(*bs, 6, oracle::bs_matrix);
  CHECK(a.disagreements == 0);
  CHECK(a.words == 5461);
  auto psl = task_amalgam("z2-z3");
  auto b = oracle::agree_on_all_words<oracle::Psl>(*psl, 6, oracle::psl_matrix);
  CHECK(b.disagreements == 0);
  // oracle keys are well defined: x^2 and y^3 are the identity matrix
  CHECK(oracle::psl_matrix(psl->parse_word("x x")) == oracle::Psl{1, 0, 0, 1});
  CHECK(oracle::psl_matrix(psl->parse_word("y y y")) == oracle::Psl{1, 0, 0, 1});
}

TEST_CASE("normal form is idempotent") {
  std::mt19937_64 rng(3);
  for (auto const& name : {"bs12", "z2-z3", "gaussian-hnn", "hnn-f2"}) {
    auto p = support::fixture(name);
    GroupPtr G = p.graph ? fundamental_group(*p.graph).group : p.group(p.task_group);
    CAPTURE(name);
    for (int i = 0; i < 10000; ++i) {
      auto c = G->evaluate(support::random_word(*G, 12, rng));
      REQUIRE(G->evaluate(G->word(c)) == c);
      REQUIRE(G->parse(G->format(c)) == c);
    }
  }
}

// A raw HNN word without a pinch t^e u t^-e (u in the e-side subgroup) keeps
// all of its stable letters.
TEST_CASE("pinch-free raw words keep their stable letters") {
  std::mt19937_64 rng(5);
  for (auto const& name : {"bs12", "hnn-f2"}) {
    auto G = task_hnn(name);
    REQUIRE(G);
    auto const& H = *G->base();
    std::uniform_int_distribution<int> coin(0, 3);
    std::size_t pinch_free = 0;
    for (int i = 0; i < 10000; ++i) {
      std::vector<HnnGroup::Item> raw;
      std::size_t stable = 0;
      for (int k = 0, n = 1 + coin(rng) * 2; k < n; ++k) {
        if (coin(rng) == 0)
          raw.push_back({0, G->edge_embedding(coin(rng) & 1)->apply(support::random_element(*G->edge_group(), 2, rng))});
        else
          raw.push_back({0, support::random_element(H, 2, rng)});
        int eps = coin(rng) & 1 ? 1 : -1;
        raw.push_back({eps, {}});
        ++stable;
      }
      bool pinch = false;
      int last = 0;
      Code between;
      for (auto const& it : raw) {
        if (it.eps == 0) {
          between = H.multiply(between, it.x);
          continue;
        }
        if (last == -it.eps) {
          // t u t^-1 pinches when u lies in alpha(E); t^-1 u t when u lies in beta(E)
          auto const& side = G->edge_embedding(last == 1 ? 0 : 1);
          if (side->contains(between).member()) pinch = true;
        }
        last = it.eps;
        between.clear();
      }
      auto reduced = britton_reduce(G, raw);
      if (!pinch) {
        ++pinch_free;
        REQUIRE(G->stable_letter_count(reduced.code()) == stable);
      }
    }
    CHECK(pinch_free > 1000);
  }
}

TEST_CASE("amalgam reduction of raw words") {
  auto G = task_amalgam("z2-z3");
  auto const x = G->factor(0)->parse("x"), y = G->factor(1)->parse("y");
  auto e = amalgam_reduce(G, {{0, x}, {1, y}, {1, y}, {1, y}, {0, x}});
  CHECK(e.is_identity());
  auto f = amalgam_reduce(G, {{0, x}, {1, y}, {0, x}});
  CHECK(syllable_length(f) == 3);
}
