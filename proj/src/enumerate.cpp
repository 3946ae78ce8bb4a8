#include <htact/enumerate.hpp>

namespace htact {

ShortlexEnumerator::ShortlexEnumerator(GroupPtr group) : group_(std::move(group)) {
  for (std::size_t i = 0; i < group_->num_generators(); ++i) {
    auto g = group_->generator(i);
    alphabet_.push_back(g);
    alphabet_.push_back(group_->inverse(g));
  }
  elements_.push_back(Code{});
  seen_.insert(Code{});
  sphere_starts_ = {0, 1};
}

bool ShortlexEnumerator::grow() {
  if (exhausted_) return false;
  std::size_t const begin = sphere_starts_[static_cast<std::size_t>(radius_)];
  std::size_t const end = elements_.size();
  for (std::size_t i = begin; i < end; ++i)
    for (auto const& s : alphabet_) {
      auto y = group_->multiply(elements_[i], s);
      if (seen_.insert(y).second) elements_.push_back(std::move(y));
    }
  ++radius_;
  sphere_starts_.push_back(elements_.size());
  if (elements_.size() == end) exhausted_ = true;
  return !exhausted_;
}

std::span<Code const> ShortlexEnumerator::ball(int radius) {
  return std::span<Code const>(elements_.data(), sphere_start(radius + 1));
}

std::size_t ShortlexEnumerator::sphere_start(int radius) {
  if (radius <= 0) return 0;
  while (radius_ < radius - 1 && grow()) {
  }
  if (radius - 1 > radius_) return elements_.size();
  return sphere_starts_[static_cast<std::size_t>(radius)];
}

Code const* ShortlexEnumerator::at(std::size_t index) {
  while (index >= elements_.size()) {
    if (!grow()) return nullptr;
  }
  return &elements_[index];
}

std::vector<Element> enumerate_ball(GroupPtr const& group, int radius) {
  if (radius < 0) throw Error("ball radius must be nonnegative");
  ShortlexEnumerator en(group);
  std::vector<Element> out;
  for (auto const& c : en.ball(radius)) out.emplace_back(group, c);
  return out;
}

}  // namespace htact
