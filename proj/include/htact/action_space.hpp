#pragma once

#include <htact/embedding.hpp>
#include <htact/normal_form.hpp>

#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace htact {

// A point (g, level) of X = Γ × N; Γ acts on the first coordinate from the left.
struct Point {
  Code g;
  std::int64_t level = 0;
  bool operator==(Point const&) const = default;
};

struct PointHash {
  std::size_t operator()(Point const& p) const noexcept {
    return CodeHash{}(p.g) * 31u + static_cast<std::size_t>(p.level);
  }
};

bool point_less(Group const& g, Point const& a, Point const& b);

enum class Mode { Hnn, Amalgam };

std::string_view to_string(Mode m);

// The free Γ-action on Γ × N together with the two copies of the edge group
// E acting on it. An intertwiner w must satisfy w(psi(e)·x) = phi(e)·w(x):
//   hnn      psi = alpha (Sigma), phi = beta (theta(Sigma)), default w = t·
//   amalgam  psi = phi = the edge group inside Γ, default w = identity
class OrbitSpace {
 public:
  struct Split {
    Code e;     // edge-group element
    Point rep;  // canonical orbit representative
  };

  explicit OrbitSpace(std::shared_ptr<HnnGroup const> g);
  explicit OrbitSpace(std::shared_ptr<AmalgamGroup const> g);

  Mode mode() const noexcept { return mode_; }
  GroupPtr const& gamma() const noexcept { return gamma_; }
  CompositeGroup const& composite() const;
  std::shared_ptr<HnnGroup const> const& hnn() const noexcept { return hnn_; }
  std::shared_ptr<AmalgamGroup const> const& amalgam() const noexcept { return amalgam_; }
  GroupPtr const& edge() const noexcept { return psi_->source(); }
  Embedding const& psi() const noexcept { return *psi_; }
  Embedding const& phi() const noexcept { return *phi_; }

  Point act(Code const& g, Point const& x) const { return {gamma_->multiply(g, x.g), x.level}; }
  // x = psi(e)·rep
  Split source_split(Point const& x) const;
  // y = phi(e)·rep
  Split target_split(Point const& y) const;
  Point default_image(Point const& x) const;
  Point default_inverse(Point const& y) const;

 private:

  Mode mode_;
  GroupPtr gamma_;
  std::shared_ptr<HnnGroup const> hnn_;
  std::shared_ptr<AmalgamGroup const> amalgam_;
  EmbeddingPtr psi_;
  EmbeddingPtr phi_;
  Code t_;
  Code t_inv_;
};

using OrbitSpacePtr = std::shared_ptr<OrbitSpace const>;

// One committed orbit: w(src) = phi(e0)·dst, with src and dst canonical.
struct Commit {
  Point src;
  Point dst;
  Code e0;
};

// The partially built intertwiner: a set of committed orbit pairs over the
// default bijection. Every batch permutes the default images of its sources,
// so the total map stays a bijection.
class IntertwinerState {
 public:
  using Visitor = std::function<void(Point const& src_rep)>;

  explicit IntertwinerState(OrbitSpacePtr space);

  OrbitSpace const& space() const noexcept { return *space_; }
  OrbitSpacePtr const& space_ptr() const noexcept { return space_; }
  std::vector<Commit> const& commits() const noexcept { return commits_; }
  std::vector<std::int64_t> const& frozen() const noexcept { return frozen_; }
  std::int64_t ceiling() const noexcept { return ceiling_; }
  bool is_frozen(std::int64_t level) const;

  bool source_committed(Point const& rep) const { return forward_.contains(rep); }
  bool target_committed(Point const& rep) const { return backward_.contains(rep); }
  Commit const* commit_of_source(Point const& rep) const;

  Point default_image(Point const& x) const { return space_->default_image(x); }
  // `touched` reports every uncommitted source orbit whose default value was used.
  Point evaluate_w(Point const& x, Visitor const& touched = {}) const;
  Point evaluate_w_inverse(Point const& y, Visitor const& touched = {}) const;
  Point evaluate_pi(Code const& g, Point const& x, Visitor const& touched = {}) const;

  // Anchors (x -> y); throws Error when the batch is not a permutation of
  // default images or touches committed orbits.
  void commit_batch(std::vector<std::pair<Point, Point>> const& anchors);
  // Commits each source orbit to its default image.
  void protect(std::vector<Point> const& source_reps);
  void freeze(std::int64_t level);
  std::int64_t lowest_open_level(std::int64_t from) const;
  // The ceiling moves when the orbits are committed, not here.
  std::vector<Point> allocate_fresh_orbits(std::size_t count, std::vector<Point> const& avoid) const;

 private:
  OrbitSpacePtr space_;
  std::vector<Commit> commits_;
  std::unordered_map<Point, std::size_t, PointHash> forward_;
  std::unordered_map<Point, std::size_t, PointHash> backward_;
  std::vector<std::int64_t> frozen_;
  std::int64_t ceiling_ = 0;
};

}  // namespace htact
