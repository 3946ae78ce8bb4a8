#pragma once

#include <htact/group.hpp>

#include <span>
#include <unordered_set>

namespace htact {

// Lazily enumerates a group in shortlex order of geodesic words over the
// alphabet g0 < g0^-1 < g1 < g1^-1 < ..., one sphere at a time.
class ShortlexEnumerator {
 public:
  explicit ShortlexEnumerator(GroupPtr group);

  // Elements of word length <= radius, in shortlex order.
  std::span<Code const> ball(int radius);
  // Element with shortlex index i (0 is the identity), or nullptr when the
  // group is finite and exhausted.
  Code const* at(std::size_t index);
  // Index of the first element of the sphere of the given radius.
  std::size_t sphere_start(int radius);
  int radius_reached() const noexcept { return radius_; }
  bool exhausted() const noexcept { return exhausted_; }
  Group const& group() const noexcept { return *group_; }

 private:
  bool grow();

  GroupPtr group_;
  std::vector<Code> elements_;
  std::vector<std::size_t> sphere_starts_;
  std::unordered_set<Code, CodeHash> seen_;
  std::vector<Code> alphabet_;
  int radius_ = 0;
  bool exhausted_ = false;
};

std::vector<Element> enumerate_ball(GroupPtr const& group, int radius);

}  // namespace htact
