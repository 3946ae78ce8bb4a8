#pragma once

#include <htact/action_space.hpp>
#include <htact/enumerate.hpp>

#include <chrono>
#include <optional>

namespace htact {

struct EngineBudget {
  std::int64_t steps = 50;
  int witness_radius = 4096;
  std::size_t witness_candidates = 200000;  // stop growing balls past this size
  double wall_seconds = 0;  // 0: no limit
};

// One discharged (or deferred) requirement.
struct Step {
  enum class Kind { Transitivity, Faithfulness };

  Kind kind = Kind::Transitivity;
  std::int64_t index = 0;
  // transitivity: mover·x_k = y_k
  std::vector<Point> x;
  std::vector<Point> y;
  Code mover;
  // faithfulness: element·witness != witness
  Code element;
  Point witness;

  std::vector<std::pair<std::string, Code>> witnesses;
  std::vector<Point> fresh;
  std::vector<std::pair<Point, Point>> batch;
  std::vector<Point> protect;
  bool deferred = false;
  std::string diagnostic;
};

std::string_view to_string(Step::Kind k);

struct Certificate {
  std::uint64_t problem_hash = 0;
  Mode mode = Mode::Amalgam;
  std::string group;
  EngineBudget budget;
  std::vector<Step> steps;
  // final state snapshot
  std::vector<Commit> commits;
  std::vector<std::int64_t> frozen;
  std::int64_t ceiling = 0;

  std::size_t deferred() const;
};

// Postcondition of a discharged step in the given state.
bool step_holds(IntertwinerState const& state, Step const& step);

// Tallies of the test-mode invariant checks run after every step.
struct InvariantReport {
  std::size_t steps_checked = 0;
  std::size_t equivariance = 0;
  std::size_t bijectivity = 0;
  std::size_t levels = 0;
  std::size_t persistence = 0;
  std::size_t homomorphism = 0;
  std::vector<std::string> violations;
};

class Engine {
 public:
  Engine(OrbitSpacePtr space, EngineBudget budget, bool check_invariants = false);

  IntertwinerState const& state() const noexcept { return state_; }
  std::vector<Step> const& steps() const noexcept { return steps_; }
  InvariantReport const& invariants() const noexcept { return report_; }
  void set_sample_size(std::size_t n) { sample_size_ = n; }
  // Called after every recorded step.
  void on_step(std::function<void(Step const&)> fn) { on_step_ = std::move(fn); }

  // Preconditions (equal lengths, distinct entries) throw Error. A witness
  // search that runs out of radius yields a deferred step and no mutation.
  Step extend_transitivity(std::vector<Point> const& x, std::vector<Point> const& y);
  Step ensure_faithful(Code const& g);
  Certificate run_schedule(std::uint64_t problem_hash = 0);

  // Schedule decoding, exposed for tests.
  Point point_at(std::uint64_t index);
  static std::vector<std::uint64_t> injective_tuple(std::size_t n, std::uint64_t rank);

 private:
  Step extend_hnn(std::vector<Point> const& x, std::vector<Point> const& y);
  Step extend_amalgam(std::vector<Point> const& x, std::vector<Point> const& y);
  std::optional<Code> search(GroupPtr const& group, ShortlexEnumerator& en,
                             std::function<bool(Code const&)> const& pred) const;
  void record(Step step);
  void check_invariants();

  OrbitSpacePtr space_;
  EngineBudget budget_;
  bool checking_;
  IntertwinerState state_;
  std::vector<Step> steps_;
  InvariantReport report_;
  std::vector<Commit> last_commits_;
  std::size_t sample_size_ = 1000;
  std::function<void(Step const&)> on_step_;
  ShortlexEnumerator gamma_en_;
  ShortlexEnumerator factor_en_[2];
};

struct VerifyReport {
  bool ok = true;
  std::string failure;
};

// Rebuilds the state from the recorded batches and re-checks everything.
VerifyReport verify_certificate(OrbitSpacePtr const& space, Certificate const& cert);

}  // namespace htact
