#include <htact/action_space.hpp>

#include <htact/enumerate.hpp>

#include <algorithm>

namespace htact {

bool point_less(Group const& g, Point const& a, Point const& b) {
  if (a.level != b.level) return a.level < b.level;
  return shortlex_less(g, a.g, b.g);
}

std::string_view to_string(Mode m) { return m == Mode::Hnn ? "hnn" : "amalgam"; }

namespace {

EmbeddingPtr lift(std::string name, CompositeGroup const& gamma, GroupPtr const& gamma_ptr, Embedding const& e,
                  int factor) {
  std::vector<Code> images;
  for (auto const& im : e.images()) images.push_back(gamma.include(factor, im));
  return std::make_shared<Embedding>(std::move(name), e.source(), gamma_ptr, std::move(images), 0,
                                     e.search_bound());
}

}  // namespace

OrbitSpace::OrbitSpace(std::shared_ptr<HnnGroup const> g) : mode_(Mode::Hnn), gamma_(g), hnn_(std::move(g)) {
  psi_ = lift("alpha", *hnn_, gamma_, *hnn_->edge_embedding(0), 0);
  phi_ = lift("beta", *hnn_, gamma_, *hnn_->edge_embedding(1), 0);
  t_ = hnn_->stable_letter();
  t_inv_ = hnn_->inverse(t_);
}

OrbitSpace::OrbitSpace(std::shared_ptr<AmalgamGroup const> g)
    : mode_(Mode::Amalgam), gamma_(g), amalgam_(std::move(g)) {
  psi_ = lift("edge", *amalgam_, gamma_, *amalgam_->edge_embedding(0), 0);
  phi_ = psi_;
}

CompositeGroup const& OrbitSpace::composite() const { return static_cast<CompositeGroup const&>(*gamma_); }

OrbitSpace::Split OrbitSpace::source_split(Point const& x) const {
  auto s = psi_->decompose(x.g);
  return {std::move(s.source), {std::move(s.rep), x.level}};
}

OrbitSpace::Split OrbitSpace::target_split(Point const& y) const {
  auto s = phi_->decompose(y.g);
  return {std::move(s.source), {std::move(s.rep), y.level}};
}

Point OrbitSpace::default_image(Point const& x) const { return mode_ == Mode::Hnn ? act(t_, x) : x; }

Point OrbitSpace::default_inverse(Point const& y) const { return mode_ == Mode::Hnn ? act(t_inv_, y) : y; }

// ------------------------------------------------------------------ state

IntertwinerState::IntertwinerState(OrbitSpacePtr space) : space_(std::move(space)) {}

bool IntertwinerState::is_frozen(std::int64_t level) const {
  return std::binary_search(frozen_.begin(), frozen_.end(), level);
}

Commit const* IntertwinerState::commit_of_source(Point const& rep) const {
  auto it = forward_.find(rep);
  return it == forward_.end() ? nullptr : &commits_[it->second];
}

Point IntertwinerState::evaluate_w(Point const& x, Visitor const& touched) const {
  auto s = space_->source_split(x);
  auto it = forward_.find(s.rep);
  if (it == forward_.end()) {
    if (touched) touched(s.rep);
    return space_->default_image(x);
  }
  auto const& c = commits_[it->second];
  auto const& E = *space_->edge();
  return space_->act(space_->phi().apply(E.multiply(s.e, c.e0)), c.dst);
}

Point IntertwinerState::evaluate_w_inverse(Point const& y, Visitor const& touched) const {
  auto s = space_->target_split(y);
  auto it = backward_.find(s.rep);
  if (it == backward_.end()) {
    auto x = space_->default_inverse(y);
    if (touched) touched(space_->source_split(x).rep);
    return x;
  }
  auto const& c = commits_[it->second];
  auto const& E = *space_->edge();
  return space_->act(space_->psi().apply(E.multiply(s.e, E.inverse(c.e0))), c.src);
}

Point IntertwinerState::evaluate_pi(Code const& g, Point const& x, Visitor const& touched) const {
  Point p = x;
  if (space_->mode() == Mode::Hnn) {
    auto const& G = *space_->hnn();
    auto form = G.decode(g);
    for (auto it = form.syllables.rbegin(); it != form.syllables.rend(); ++it) {
      p = space_->act(G.include(0, it->rep), p);
      p = it->eps > 0 ? evaluate_w(p, touched) : evaluate_w_inverse(p, touched);
    }
    return space_->act(G.include(0, form.head), p);
  }
  auto const& G = *space_->amalgam();
  auto form = G.decode(g);
  for (auto it = form.syllables.rbegin(); it != form.syllables.rend(); ++it) {
    if (it->factor == 0) {
      p = space_->act(G.include(0, it->rep), p);
    } else {
      p = evaluate_w(p, touched);
      p = space_->act(G.include(1, it->rep), p);
      p = evaluate_w_inverse(p, touched);
    }
  }
  return space_->act(space_->psi().apply(form.sigma), p);
}

void IntertwinerState::commit_batch(std::vector<std::pair<Point, Point>> const& anchors) {
  auto const& E = *space_->edge();
  std::unordered_set<Point, PointHash> sources, targets, defaults;
  std::vector<Commit> batch;
  for (auto const& [x, y] : anchors) {
    auto sx = space_->source_split(x);
    auto sy = space_->target_split(y);
    if (forward_.contains(sx.rep)) throw Error("commit: source orbit already committed");
    if (backward_.contains(sy.rep)) throw Error("commit: target orbit already committed");
    if (!sources.insert(sx.rep).second) throw Error("commit: repeated source orbit in batch");
    if (!targets.insert(sy.rep).second) throw Error("commit: repeated target orbit in batch");
    defaults.insert(space_->target_split(space_->default_image(sx.rep)).rep);
    batch.push_back({sx.rep, sy.rep, E.multiply(E.inverse(sx.e), sy.e)});
  }
  if (defaults != targets) throw Error("commit: batch targets are not a permutation of default images");
  for (auto& c : batch) {
    ceiling_ = std::max({ceiling_, c.src.level, c.dst.level});
    forward_.emplace(c.src, commits_.size());
    backward_.emplace(c.dst, commits_.size());
    commits_.push_back(std::move(c));
  }
}

void IntertwinerState::protect(std::vector<Point> const& source_reps) {
  for (auto const& rep : source_reps) {
    auto r = space_->source_split(rep).rep;
    if (forward_.contains(r)) continue;
    commit_batch({{r, space_->default_image(r)}});
  }
}

void IntertwinerState::freeze(std::int64_t level) {
  auto it = std::lower_bound(frozen_.begin(), frozen_.end(), level);
  if (it == frozen_.end() || *it != level) frozen_.insert(it, level);
  ceiling_ = std::max(ceiling_, level);
}

std::int64_t IntertwinerState::lowest_open_level(std::int64_t from) const {
  while (is_frozen(from)) ++from;
  return from;
}

std::vector<Point> IntertwinerState::allocate_fresh_orbits(std::size_t count, std::vector<Point> const& avoid) const {
  std::unordered_set<Point, PointHash> blocked;
  for (auto const& p : avoid) blocked.insert(space_->source_split(p).rep);
  auto const level = lowest_open_level(ceiling_);
  ShortlexEnumerator en(space_->gamma());
  std::vector<Point> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    auto const* g = en.at(i);
    if (!g) throw Error("allocate: group exhausted");
    auto rep = space_->source_split({*g, level}).rep;
    if (forward_.contains(rep) || backward_.contains(space_->target_split(rep).rep)) continue;
    if (!blocked.insert(rep).second) continue;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace htact
