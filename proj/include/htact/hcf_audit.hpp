#pragma once

#include <htact/action_space.hpp>
#include <htact/embedding.hpp>
#include <htact/enumerate.hpp>

#include <optional>

namespace htact {

struct AuditBounds {
  int tuple_max = 2;       // n̄
  int point_radius = 2;    // rho: tuples and F live in ball(rho)
  int witness_radius = 4;  // r: witnesses are searched in ball(r)
  int covering_max = 2;    // largest covering tried by the action audit

  void validate() const;
};

enum class Status { Pass, Fail, Undecided };
std::string_view to_string(Status s);

// One piece S_k of a counterexample covering, with a nontrivial element of
// its core (subgroup audits) or a nontrivial common fixer (action audits).
struct Piece {
  std::string text;
  std::vector<Code> members;  // explicit finite piece of the group
  bool whole_group = false;
  std::int64_t lo = 0;  // action audits: points with index in [lo, hi)
  std::int64_t hi = -1;  // -1: unbounded
  Code core;
  std::string core_text;
  std::size_t fixer = 0;  // action audits: element index
};

struct Instance {
  std::vector<Code> x;
  Code witness;
  std::vector<std::size_t> elements;  // action audits: element indices of x
  std::size_t point = 0;              // action audits: index of the moved point
};

struct AuditVerdict {
  Status status = Status::Undecided;
  AuditBounds bounds;
  std::string rule;
  std::string detail;
  std::size_t instances = 0;
  std::vector<Instance> witnesses;  // pass evidence
  std::optional<Instance> stuck;    // first instance without a witness
  // fail evidence
  std::vector<Code> F;
  std::vector<std::int64_t> F_points;
  std::vector<Piece> pieces;
};

// ------------------------------------------------------------ witness sets

// h·x ∈ Σ·F, i.e. h·x·f^-1 ∈ Σ for some f. Throws Undecided.
bool in_sigma_F(Embedding const& sigma, Code const& g, std::vector<Code> const& F);

bool in_H_set(Embedding const& sigma, Code const& h, std::vector<Code> const& x, std::vector<Code> const& F);
bool in_G_set(Embedding const& sigma, Code const& h, std::vector<Code> const& x, std::vector<Code> const& F);
// X = H × N with the free action; points are (element, copy index).
bool in_E_set(Embedding const& sigma, Code const& h, std::vector<Point> const& x, std::vector<Point> const& F);

std::optional<Code> search_H_set(Embedding const& sigma, std::vector<Code> const& x, std::vector<Code> const& F,
                                 int radius);
std::optional<Code> search_G_set(Embedding const& sigma, std::vector<Code> const& x, std::vector<Code> const& F,
                                 int radius);
std::optional<Code> search_E_set(Embedding const& sigma, std::vector<Point> const& x, std::vector<Point> const& F,
                                 int radius);

// F' = ∪ F x_i^-1 and y = (x_i x_j^-1)_{i≠j}; H-set witnesses for (y, F')
// lie in the G-set of (x, F).
struct GFromH {
  std::vector<Code> y;
  std::vector<Code> F;
};
GFromH g_set_transport(Group const& H, std::vector<Code> const& x, std::vector<Code> const& F);
// Σ-orbit representatives of F and the distinct group coordinates of x; G-set
// witnesses for (y, F') lie in the E-set of (x, F).
GFromH e_set_transport(Embedding const& sigma, std::vector<Point> const& x, std::vector<Point> const& F);

// ------------------------------------------------------------------ audits

AuditVerdict audit_hcf(Embedding const& sigma, AuditBounds const& bounds);
// Re-evaluates the evidence of a verdict; true when it stands.
bool recheck_hcf(Embedding const& sigma, AuditVerdict const& v);

AuditVerdict certify_structural(Embedding const& sigma, AuditBounds const& bounds);

// A group acting on points indexed by N. Implementations precompute their
// windows in prepare() so that fixes() can run concurrently.
class PointAction {
 public:
  virtual ~PointAction() = default;
  virtual std::string name() const = 0;
  virtual void prepare(AuditBounds const& bounds) = 0;
  // Elements of the word ball of the given radius; index 0 is the identity.
  virtual std::size_t element_count(int radius) const = 0;
  virtual std::string element_text(std::size_t e) const = 0;
  virtual Code element_code(std::size_t e) const { return {static_cast<std::int64_t>(e)}; }
  // Number of points indexed by the ball of the given radius.
  virtual std::size_t point_count(int radius) const = 0;
  virtual std::string point_text(std::size_t p) const = 0;
  virtual bool fixes(std::size_t e, std::size_t p) const = 0;
  // Exact answer to "e fixes every point with index >= m", when known.
  virtual std::optional<bool> fixes_from(std::size_t, std::size_t) const { return std::nullopt; }
};

AuditVerdict audit_highly_faithful(PointAction& action, AuditBounds const& bounds);
bool recheck_highly_faithful(PointAction& action, AuditVerdict const& v);

// Finitely supported permutations of N; elements are the permutations of
// {0..zone-1}, points are the naturals.
class FinitarySymmetricAction final : public PointAction {
 public:
  explicit FinitarySymmetricAction(int zone = 5);
  std::string name() const override { return "finitary-symmetric"; }
  void prepare(AuditBounds const&) override {}
  std::size_t element_count(int) const override { return perms_.size(); }
  std::string element_text(std::size_t e) const override;
  Code element_code(std::size_t e) const override;
  std::size_t point_count(int radius) const override;
  std::string point_text(std::size_t p) const override { return std::to_string(p); }
  bool fixes(std::size_t e, std::size_t p) const override;
  std::optional<bool> fixes_from(std::size_t e, std::size_t m) const override;
  std::size_t find(std::vector<int> const& perm) const;

 private:
  int zone_;
  std::vector<std::vector<int>> perms_;
};

// Z acting on Z by translation; point index p encodes 0, 1, -1, 2, -2, ...
class TranslationAction final : public PointAction {
 public:
  std::string name() const override { return "translation"; }
  void prepare(AuditBounds const&) override {}
  std::size_t element_count(int radius) const override { return static_cast<std::size_t>(2 * radius + 1); }
  std::string element_text(std::size_t e) const override { return std::to_string(decode(e)); }
  Code element_code(std::size_t e) const override;
  std::size_t point_count(int radius) const override { return static_cast<std::size_t>(2 * radius + 1); }
  std::string point_text(std::size_t p) const override { return std::to_string(decode(p)); }
  bool fixes(std::size_t e, std::size_t) const override { return decode(e) == 0; }
  std::optional<bool> fixes_from(std::size_t e, std::size_t) const override { return decode(e) == 0; }
  static std::int64_t decode(std::size_t i);
};

// H acting on the right cosets Σg by h·Σg = Σ g h^-1; points are indexed by
// the order in which their shortlex-least representatives appear.
class CosetAction final : public PointAction {
 public:
  explicit CosetAction(std::shared_ptr<Embedding const> sigma);
  std::string name() const override { return "cosets"; }
  void prepare(AuditBounds const& bounds) override;
  std::size_t element_count(int radius) const override;
  std::string element_text(std::size_t e) const override;
  Code element_code(std::size_t e) const override { return elements_.at(e); }
  std::size_t point_count(int radius) const override;
  std::string point_text(std::size_t p) const override;
  bool fixes(std::size_t e, std::size_t p) const override;
  // Exact only when the index is finite and every coset is listed.
  std::optional<bool> fixes_from(std::size_t e, std::size_t m) const override;

 private:
  std::shared_ptr<Embedding const> sigma_;
  bool finite_index_ = false;
  std::vector<Code> elements_;
  std::vector<std::size_t> element_spheres_;
  std::vector<Code> reps_;
  std::vector<std::size_t> rep_spheres_;
};

}  // namespace htact
