#pragma once

#include <htact/group.hpp>

#include <unordered_map>

namespace htact {

// Finite group given by a multiplication table over indices 0..n-1.
// Code: {} for the identity, otherwise {index}.
class FiniteGroup final : public Group {
 public:
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators);

  GroupKind kind() const override { return GroupKind::Finite; }
  std::size_t num_generators() const override { return gens_.size(); }
  Code generator(std::size_t i) const override { return encode(gens_.at(i)); }
  Code multiply(Code const& a, Code const& b) const override;
  Code inverse(Code const& a) const override;
  Word word(Code const& a) const override;
  bool is_normal(Code const& a) const override;
  bool is_finite() const override { return true; }

  std::size_t order() const noexcept { return table_.size(); }
  int index_of(Code const& a) const { return a.empty() ? identity_ : static_cast<int>(a[0]); }
  Code encode(int index) const { return index == identity_ ? Code{} : Code{index}; }
  std::vector<Code> elements() const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> gens_;
  std::vector<int> inverse_;
  std::vector<Word> words_;
  int identity_ = 0;
};

std::shared_ptr<FiniteGroup> make_cyclic(int order);
std::shared_ptr<FiniteGroup> make_trivial();

// Z^r. Code: {} for zero, otherwise the full coordinate vector.
class FreeAbelianGroup final : public Group {
 public:
  explicit FreeAbelianGroup(int rank);

  GroupKind kind() const override { return GroupKind::FreeAbelian; }
  std::size_t num_generators() const override { return static_cast<std::size_t>(rank_); }
  Code generator(std::size_t i) const override;
  Code multiply(Code const& a, Code const& b) const override;
  Code inverse(Code const& a) const override;
  Word word(Code const& a) const override;
  bool is_normal(Code const& a) const override;

  int rank() const noexcept { return rank_; }
  std::vector<std::int64_t> coords(Code const& a) const;
  Code from_coords(std::vector<std::int64_t> const& v) const;

 private:
  int rank_;
};

// Free group. Code: freely reduced letters, +(i+1) for generator i and
// -(i+1) for its inverse.
class FreeGroup final : public Group {
 public:
  explicit FreeGroup(int rank);

  GroupKind kind() const override { return GroupKind::Free; }
  std::size_t num_generators() const override { return static_cast<std::size_t>(rank_); }
  Code generator(std::size_t i) const override { return Code{static_cast<std::int64_t>(i) + 1}; }
  Code multiply(Code const& a, Code const& b) const override;
  Code inverse(Code const& a) const override;
  Word word(Code const& a) const override;
  bool is_normal(Code const& a) const override;

  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Q ⋉ Z^r with Q finite acting by integer matrices. An element is a pair
// (v, q) read as the product v·q, so (v1,q1)(v2,q2) = (v1 + A(q1) v2, q1 q2).
// Code: {} for the identity, otherwise {q index, v_1..v_r}.
// Generators: Q's generators first, then the r translations.
class SemidirectGroup final : public Group {
 public:
  SemidirectGroup(std::shared_ptr<FiniteGroup const> quotient, int rank,
                  std::vector<IntMatrix> generator_action);

  GroupKind kind() const override { return GroupKind::Semidirect; }
  std::size_t num_generators() const override;
  Code generator(std::size_t i) const override;
  Code multiply(Code const& a, Code const& b) const override;
  Code inverse(Code const& a) const override;
  Word word(Code const& a) const override;
  bool is_normal(Code const& a) const override;
  bool is_finite() const override { return rank_ == 0; }

  std::shared_ptr<FiniteGroup const> const& quotient() const noexcept { return quotient_; }
  int rank() const noexcept { return rank_; }
  IntMatrix const& action(int q) const { return actions_.at(static_cast<std::size_t>(q)); }
  std::vector<IntMatrix> const& generator_action() const noexcept { return generator_action_; }

  struct Parts {
    int q;
    std::vector<std::int64_t> v;
  };
  Parts split(Code const& a) const;
  Code join(Parts const& p) const;

 private:
  std::shared_ptr<FiniteGroup const> quotient_;
  int rank_;
  std::vector<IntMatrix> generator_action_;
  std::vector<IntMatrix> actions_;  // indexed by quotient element
};

IntMatrix matmul(IntMatrix const& a, IntMatrix const& b);
std::vector<std::int64_t> matvec(IntMatrix const& a, std::vector<std::int64_t> const& v);

}  // namespace htact
