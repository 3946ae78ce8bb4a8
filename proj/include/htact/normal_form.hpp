#pragma once

#include <htact/embedding.hpp>
#include <htact/group.hpp>

namespace htact {

// Amalgams and HNN extensions. Both expose their vertex groups as factors
// so that subgroups living in one factor can be handled there.
class CompositeGroup : public Group {
 public:
  struct HeadSplit {
    Code head;  // element of factor f
    Code tail;  // composite element whose normal form starts outside factor f
  };

  virtual int num_factors() const = 0;
  virtual GroupPtr const& factor(int f) const = 0;
  // Image of a factor element in the composite group.
  virtual Code include(int f, Code const& x) const = 0;
  // g = include(f, head) · tail, with the split depending only on g.
  virtual HeadSplit split_head(int f, Code const& g) const = 0;
  virtual std::size_t syllable_length(Code const& g) const = 0;
  virtual EmbeddingPtr const& edge_embedding(int side) const = 0;
  GroupPtr const& edge_group() const { return edge_embedding(0)->source(); }

  std::optional<Code> in_factor(int f, Code const& g) const {
    auto s = split_head(f, g);
    if (!s.tail.empty()) return std::nullopt;
    return s.head;
  }
};

using CompositePtr = std::shared_ptr<CompositeGroup const>;

// left *_E right with E embedded on each side.
//
// Normal form: sigma · r_1 · r_2 ... r_k where sigma is an edge-group element
// (pushed maximally to the left) and each r_i is a nontrivial canonical right
// transversal representative of the edge subgroup in its factor, factors
// alternating. Code: {} for the identity, otherwise
// {|sigma|, sigma..., f_1, |r_1|, r_1..., f_2, ...}.
class AmalgamGroup final : public CompositeGroup {
 public:
  struct Syllable {
    int factor;  // 0 = left, 1 = right
    Code rep;
    bool operator==(Syllable const&) const = default;
  };
  struct Form {
    Code sigma;
    std::vector<Syllable> syllables;
  };
  // Raw word letter: factor 0/1 with a factor element, or factor -1 with an
  // edge-group element.
  struct Item {
    int factor;
    Code x;
  };

  AmalgamGroup(EmbeddingPtr left, EmbeddingPtr right);

  GroupKind kind() const override { return GroupKind::Amalgam; }
  std::size_t num_generators() const override;
  Code generator(std::size_t i) const override;
  Code multiply(Code const& a, Code const& b) const override;
  Code inverse(Code const& a) const override;
  Word word(Code const& a) const override;
  bool is_normal(Code const& a) const override;
  bool is_infinite() const override;

  int num_factors() const override { return 2; }
  GroupPtr const& factor(int f) const override { return sides_[f]->target(); }
  Code include(int f, Code const& x) const override;
  HeadSplit split_head(int f, Code const& g) const override;
  std::size_t syllable_length(Code const& g) const override;
  EmbeddingPtr const& edge_embedding(int side) const override { return sides_[side]; }

  Form decode(Code const& a) const;
  Code encode(Form const& f) const;
  Code reduce(std::vector<Item> const& raw) const;

 private:
  void prepend(Form& form, std::vector<Syllable>& rev, Item const& item) const;

  EmbeddingPtr sides_[2];
};

// HNN(H, E, alpha, beta) = <H, t | t alpha(e) t^-1 = beta(e)>, written
// elsewhere with Sigma = alpha(E) and theta = beta ∘ alpha^-1.
//
// Normal form: h_0 t^e1 r_1 ... t^ek r_k with r_i a canonical right
// transversal representative of alpha(E) (e_i = +1) or beta(E) (e_i = -1),
// and no pinch t^e 1 t^-e. Code: {} for the identity, otherwise
// {|h_0|, h_0..., e_1, |r_1|, r_1..., ...}.
class HnnGroup final : public CompositeGroup {
 public:
  struct Syllable {
    int eps;
    Code rep;
    bool operator==(Syllable const&) const = default;
  };
  struct Form {
    Code head;
    std::vector<Syllable> syllables;
  };
  // Raw word letter: eps == 0 for a base element x, otherwise t^eps.
  struct Item {
    int eps;
    Code x;
  };

  HnnGroup(EmbeddingPtr sigma, EmbeddingPtr theta, std::string stable_label = "t");

  GroupKind kind() const override { return GroupKind::HNN; }
  std::size_t num_generators() const override;
  Code generator(std::size_t i) const override;
  Code multiply(Code const& a, Code const& b) const override;
  Code inverse(Code const& a) const override;
  Word word(Code const& a) const override;
  bool is_normal(Code const& a) const override;
  bool is_infinite() const override { return true; }

  int num_factors() const override { return 1; }
  GroupPtr const& factor(int) const override { return sides_[0]->target(); }
  GroupPtr const& base() const { return sides_[0]->target(); }
  Code include(int f, Code const& x) const override;
  HeadSplit split_head(int f, Code const& g) const override;
  std::size_t syllable_length(Code const& g) const override;
  // side 0: alpha (Sigma_+1), side 1: beta (Sigma_-1 = theta(Sigma))
  EmbeddingPtr const& edge_embedding(int side) const override { return sides_[side]; }

  Code stable_letter() const;
  std::size_t stable_letter_count(Code const& a) const { return decode(a).syllables.size(); }

  Form decode(Code const& a) const;
  Code encode(Form const& f) const;
  Code reduce(std::vector<Item> const& raw) const;

 private:
  void prepend(Form& form, std::vector<Syllable>& rev, Item const& item) const;

  EmbeddingPtr sides_[2];
};

// Britton reduction of a raw word in an HNN group.
Element britton_reduce(std::shared_ptr<HnnGroup const> const& g, std::vector<HnnGroup::Item> const& raw);
// Alternating-syllable reduction of a raw word in an amalgam.
Element amalgam_reduce(std::shared_ptr<AmalgamGroup const> const& g,
                       std::vector<AmalgamGroup::Item> const& raw);
std::size_t syllable_length(Element const& g);

}  // namespace htact
