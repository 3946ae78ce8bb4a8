#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace htact {

// Canonical encoding of a group element. The identity is always the empty
// code; every kind documents its own layout.
using Code = std::vector<std::int64_t>;

struct CodeHash {
  std::size_t operator()(Code const& c) const noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (auto v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ c.size());
  }
};

// A generator raised to a nonzero power.
struct Letter {
  int gen;
  std::int64_t exp;
  bool operator==(Letter const&) const = default;
};
using Word = std::vector<Letter>;

enum class GroupKind { Finite, FreeAbelian, Free, Semidirect, Amalgam, HNN };

std::string_view to_string(GroupKind k);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a membership question cannot be settled within the configured
// enumeration bound.
class Undecided : public Error {
 public:
  Undecided(std::string const& what, int bound) : Error(what), bound_(bound) {}
  int bound() const noexcept { return bound_; }

 private:
  int bound_;
};

class Group {
 public:
  virtual ~Group() = default;

  virtual GroupKind kind() const = 0;
  virtual std::size_t num_generators() const = 0;
  virtual Code generator(std::size_t i) const = 0;
  virtual Code multiply(Code const& a, Code const& b) const = 0;
  virtual Code inverse(Code const& a) const = 0;
  // Canonical word for a stored element; concatenating the letters in order
  // evaluates back to the element.
  virtual Word word(Code const& a) const = 0;
  // True iff `a` is a valid stored (normal form) code.
  virtual bool is_normal(Code const& a) const = 0;
  virtual bool is_finite() const { return false; }
  // Infiniteness decided by kind (free/abelian of positive rank, composites
  // with an infinite factor, semidirect with r > 0).
  virtual bool is_infinite() const { return !is_finite(); }

  Code identity() const { return {}; }
  Code power(Code const& a, std::int64_t k) const;
  Code evaluate(Word const& w) const;

  std::string const& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::vector<std::string> const& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels);

  // Word rendering: "a b^-1 t", "1" for the identity.
  std::string format(Code const& a) const;
  std::string format_word(Word const& w) const;
  // Parses the format above; `X^-1` and `X^k` accepted for every label.
  Code parse(std::string_view text) const;
  Word parse_word(std::string_view text) const;

  std::size_t word_length(Code const& a) const;

 protected:
  std::string name_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<Group const>;

// Letter index in the fixed alphabet g0 < g0^-1 < g1 < g1^-1 < ...
inline int alphabet_index(int gen, bool inverse) { return 2 * gen + (inverse ? 1 : 0); }

// Shortlex comparison of canonical words (length first, then alphabet order).
bool shortlex_less(Group const& g, Code const& a, Code const& b);
std::vector<int> shortlex_key(Group const& g, Code const& a);

class Element {
 public:
  Element() = default;
  Element(GroupPtr owner, Code code) : owner_(std::move(owner)), code_(std::move(code)) {}

  GroupPtr const& owner() const noexcept { return owner_; }
  Code const& code() const noexcept { return code_; }
  bool is_identity() const noexcept { return code_.empty(); }
  std::string str() const { return owner_ ? owner_->format(code_) : "?"; }

 private:
  GroupPtr owner_;
  Code code_;
};

Element compose(Element const& a, Element const& b);
Element invert(Element const& a);
bool equal(Element const& a, Element const& b);

}  // namespace htact
