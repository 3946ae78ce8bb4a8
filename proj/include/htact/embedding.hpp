#pragma once

#include <htact/group.hpp>

#include <optional>
#include <unordered_map>
#include <utility>

namespace htact {

struct Membership {
  enum class Status { Member, NonMember, Undecided };
  Status status = Status::NonMember;
  Code preimage;  // valid when status == Member
  int bound = 0;  // enumeration bound when status == Undecided

  bool member() const noexcept { return status == Status::Member; }
  bool undecided() const noexcept { return status == Status::Undecided; }
};

// Result of writing g = e(source)·rep with rep the canonical representative
// of the right coset image(e)·g.
struct CosetSplit {
  Code source;
  Code rep;
};

// A monomorphism source -> target given by generator images.
//
// Membership and right-coset decomposition are decided per kind:
//   factor-head   target is an amalgam/HNN and every image lies in one vertex
//                 factor; the question is pushed into that factor.
//   finite        the source is finite; its image is tabulated.
//   lattice       free abelian into free abelian; echelon-form solve.
//   free-cyclic   rank-one source into a free group; cyclic reduction.
//   bounded       everything else; source-ball enumeration, partial.
// Coset representatives are shortlex-minimal for the non-composite kinds.
// For composite targets the representative is canonical for the coset but
// minimal only in the vertex-factor component.
class Embedding {
 public:
  enum class Strategy { FactorHead, FiniteSource, Lattice, FreeCyclic, Bounded };

  Embedding(std::string name, GroupPtr source, GroupPtr target, std::vector<Code> images,
            int injectivity_bound = 4, int search_bound = 8);

  std::string const& name() const noexcept { return name_; }
  GroupPtr const& source() const noexcept { return source_; }
  GroupPtr const& target() const noexcept { return target_; }
  std::vector<Code> const& images() const noexcept { return images_; }
  Strategy strategy() const noexcept { return strategy_; }
  std::string_view strategy_name() const;
  int search_bound() const noexcept { return search_bound_; }

  Code apply(Code const& s) const;
  Membership contains(Code const& g) const;
  // Throws Undecided when membership cannot be settled.
  CosetSplit decompose(Code const& g) const;
  // Throws Error when g is not in the image.
  Code preimage(Code const& g) const;

 private:
  void check_homomorphism() const;
  void check_injective(int bound) const;
  void choose_strategy();

  Membership contains_lattice(Code const& g) const;
  CosetSplit decompose_lattice(Code const& g) const;
  Membership contains_free_cyclic(Code const& g) const;
  CosetSplit decompose_free_cyclic(Code const& g) const;

  std::string name_;
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Code> images_;
  int search_bound_;
  Strategy strategy_ = Strategy::Bounded;

  // finite
  std::vector<std::pair<Code, Code>> finite_pairs_;  // (source, image)
  std::unordered_map<Code, Code, CodeHash> finite_preimage_;
  // lattice: images as columns, reduced to echelon form with transform
  std::vector<std::vector<std::int64_t>> echelon_;    // columns
  std::vector<std::vector<std::int64_t>> transform_;  // columns, source coordinates
  std::vector<int> pivots_;
  // free cyclic: image = conj · core · conj^-1, core cyclically reduced
  Code conj_;
  Code core_;
  // factor head
  int factor_ = -1;
  std::shared_ptr<Embedding> inner_;
};

using EmbeddingPtr = std::shared_ptr<Embedding const>;

}  // namespace htact
