#include <htact/hcf_audit.hpp>

#include <htact/search.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>

namespace htact {

void AuditBounds::validate() const {
  if (tuple_max < 2) throw Error("bounds: tuple size must be at least 2");
  if (point_radius < 1 || witness_radius < 1 || covering_max < 1) throw Error("bounds: radii must be positive");
  if (witness_radius < point_radius) throw Error("bounds: witness radius below point radius");
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Undecided: return "undecided";
  }
  return "?";
}

namespace {

bool member(Embedding const& sigma, Code const& g) {
  auto m = sigma.contains(g);
  if (m.undecided()) throw Undecided("membership undecided for " + sigma.target()->format(g), m.bound);
  return m.member();
}

std::vector<Code> ball_copy(GroupPtr const& g, int radius) {
  ShortlexEnumerator en(g);
  auto b = en.ball(radius);
  return {b.begin(), b.end()};
}

// Increasing index tuples of size 1..max over n items.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, int max) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == static_cast<std::size_t>(max)) return;
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::stable_sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.size() < b.size(); });
  return out;
}

std::string tuple_text(Group const& g, std::vector<Code> const& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + g.format(x[i]);
  return s + ")";
}

bool h_set(Embedding const& sigma, Group const& T, Code const& h, std::vector<Code> const& x,
           std::vector<Code> const& F) {
  auto const hi = T.inverse(h);
  for (auto const& xi : x) {
    if (in_sigma_F(sigma, T.multiply(h, xi), F)) return false;
    if (member(sigma, T.multiply(T.multiply(h, xi), hi))) return false;
  }
  return true;
}

template <class Pred>
std::optional<Code> search_ball(std::vector<Code> const& ball, Pred const& pred, bool parallel) {
  auto i = parallel ? first_match(ball.size(), [&](std::size_t k) { return pred(ball[k]); })
                    : first_match_serial(ball.size(), [&](std::size_t k) { return pred(ball[k]); });
  if (i == npos) return std::nullopt;
  return ball[i];
}

// True when the cosets of `reps` are closed under right multiplication by
// generators and inverses, i.e. they are all of Σ\H.
bool closed_cosets(Embedding const& sigma, std::vector<Code> const& reps) {
  auto const& T = *sigma.target();
  std::unordered_set<Code, CodeHash> have(reps.begin(), reps.end());
  for (auto const& r : reps)
    for (std::size_t i = 0; i < T.num_generators(); ++i)
      for (auto const& s : {T.generator(i), T.inverse(T.generator(i))})
        if (!have.contains(sigma.decompose(T.multiply(r, s)).rep)) return false;
  return true;
}

std::vector<Code> coset_reps(Embedding const& sigma, std::vector<Code> const& elems) {
  std::vector<Code> out;
  std::unordered_set<Code, CodeHash> seen;
  for (auto const& g : elems) {
    auto r = sigma.decompose(g).rep;
    if (seen.insert(r).second) out.push_back(std::move(r));
  }
  return out;
}

bool all_images_trivial(Embedding const& sigma) {
  return std::all_of(sigma.images().begin(), sigma.images().end(), [](Code const& c) { return c.empty(); });
}

Code first_nontrivial_image(Embedding const& sigma) {
  for (auto const& c : sigma.images())
    if (!c.empty()) return c;
  return {};
}

bool is_normal(Embedding const& sigma) {
  auto const& T = *sigma.target();
  for (auto const& im : sigma.images())
    for (std::size_t i = 0; i < T.num_generators(); ++i)
      for (auto const& s : {T.generator(i), T.inverse(T.generator(i))})
        if (!member(sigma, T.multiply(T.multiply(s, im), T.inverse(s)))) return false;
  return true;
}

}  // namespace

// ------------------------------------------------------------ witness sets

bool in_sigma_F(Embedding const& sigma, Code const& g, std::vector<Code> const& F) {
  auto const& T = *sigma.target();
  for (auto const& f : F)
    if (member(sigma, T.multiply(g, T.inverse(f)))) return true;
  return false;
}

bool in_H_set(Embedding const& sigma, Code const& h, std::vector<Code> const& x, std::vector<Code> const& F) {
  return h_set(sigma, *sigma.target(), h, x, F);
}

bool in_G_set(Embedding const& sigma, Code const& h, std::vector<Code> const& x, std::vector<Code> const& F) {
  auto const& T = *sigma.target();
  auto const hi = T.inverse(h);
  for (auto const& xi : x)
    if (in_sigma_F(sigma, T.multiply(h, xi), F)) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j && member(sigma, T.multiply(T.multiply(h, T.multiply(x[i], T.inverse(x[j]))), hi))) return false;
  return true;
}

bool in_E_set(Embedding const& sigma, Code const& h, std::vector<Point> const& x, std::vector<Point> const& F) {
  auto const& T = *sigma.target();
  std::vector<Code> hx;
  for (auto const& p : x) {
    hx.push_back(T.multiply(h, p.g));
    for (auto const& f : F)
      if (f.level == p.level && member(sigma, T.multiply(hx.back(), T.inverse(f.g)))) return false;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i].level == x[j].level && member(sigma, T.multiply(hx[i], T.inverse(hx[j])))) return false;
  return true;
}

std::optional<Code> search_H_set(Embedding const& sigma, std::vector<Code> const& x, std::vector<Code> const& F,
                                 int radius) {
  auto ball = ball_copy(sigma.target(), radius);
  return search_ball(ball, [&](Code const& h) { return in_H_set(sigma, h, x, F); }, true);
}

std::optional<Code> search_G_set(Embedding const& sigma, std::vector<Code> const& x, std::vector<Code> const& F,
                                 int radius) {
  auto ball = ball_copy(sigma.target(), radius);
  return search_ball(ball, [&](Code const& h) { return in_G_set(sigma, h, x, F); }, true);
}

std::optional<Code> search_E_set(Embedding const& sigma, std::vector<Point> const& x, std::vector<Point> const& F,
                                 int radius) {
  auto ball = ball_copy(sigma.target(), radius);
  return search_ball(ball, [&](Code const& h) { return in_E_set(sigma, h, x, F); }, true);
}

GFromH g_set_transport(Group const& H, std::vector<Code> const& x, std::vector<Code> const& F) {
  GFromH out;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j) out.y.push_back(H.multiply(x[i], H.inverse(x[j])));
  std::unordered_set<Code, CodeHash> seen;
  for (auto const& xi : x)
    for (auto const& f : F) {
      auto c = H.multiply(f, H.inverse(xi));
      if (seen.insert(c).second) out.F.push_back(std::move(c));
    }
  return out;
}

GFromH e_set_transport(Embedding const& sigma, std::vector<Point> const& x, std::vector<Point> const& F) {
  auto const& H = *sigma.target();
  GFromH out;
  std::unordered_set<Code, CodeHash> seen;
  for (auto const& f : F) {
    auto r = sigma.decompose(f.g).rep;
    if (seen.insert(r).second) out.F.push_back(std::move(r));
  }
  seen.clear();
  for (auto const& p : x)
    if (seen.insert(p.g).second) out.y.push_back(p.g);
  if (out.y.size() == 1) {
    // any second coordinate works; G-sets of pairs control one orbit too
    Code other = out.y[0].empty() ? H.generator(0) : Code{};
    out.y.push_back(std::move(other));
  }
  return out;
}

// ------------------------------------------------------------------ audits

AuditVerdict audit_hcf(Embedding const& sigma, AuditBounds const& bounds) {
  bounds.validate();
  auto const& T = *sigma.target();
  AuditVerdict v;
  v.bounds = bounds;
  if (all_images_trivial(sigma)) {
    v.status = Status::Pass;
    v.rule = "trivial-subgroup";
    v.detail = "the trivial subgroup is highly core-free";
    return v;
  }
  try {
    auto reps = coset_reps(sigma, ball_copy(sigma.target(), bounds.witness_radius));
    if (closed_cosets(sigma, reps)) {
      v.status = Status::Fail;
      v.rule = "finite-index";
      v.F = reps;
      Piece p;
      p.text = "{1}";
      p.members = {Code{}};
      p.core = first_nontrivial_image(sigma);
      p.core_text = T.format(p.core);
      v.pieces.push_back(std::move(p));
      v.detail = "finite index " + std::to_string(reps.size()) + "; F is a transversal";
      return v;
    }
    if (is_normal(sigma)) {
      v.status = Status::Fail;
      v.rule = "normal-subgroup";
      Piece p;
      p.text = "H";
      p.whole_group = true;
      p.core = first_nontrivial_image(sigma);
      p.core_text = T.format(p.core);
      v.pieces.push_back(std::move(p));
      v.detail = "nontrivial normal subgroup; the core of H is itself";
      return v;
    }
  } catch (Undecided const& e) {
    v.status = Status::Undecided;
    v.rule = "membership";
    v.detail = e.what();
    return v;
  }

  auto points = ball_copy(sigma.target(), bounds.point_radius);
  auto const F = points;
  points.erase(points.begin());
  auto const witness_ball = ball_copy(sigma.target(), bounds.witness_radius);
  auto const tuples = combinations(points.size(), bounds.tuple_max);
  v.instances = tuples.size();

  enum Outcome : char { Found, Missing, Unsettled };
  std::vector<Outcome> outcome(tuples.size(), Missing);
  std::vector<Instance> inst(tuples.size());
  std::vector<std::string> why(tuples.size());
  for_each_index(tuples.size(), [&](std::size_t t) {
    for (auto i : tuples[t]) inst[t].x.push_back(points[i]);
    try {
      auto h = search_ball(witness_ball, [&](Code const& c) { return h_set(sigma, T, c, inst[t].x, F); }, false);
      if (h) {
        inst[t].witness = *h;
        outcome[t] = Found;
      }
    } catch (Undecided const& e) {
      outcome[t] = Unsettled;
      why[t] = e.what();
    }
  });

  for (std::size_t t = 0; t < tuples.size(); ++t) {
    if (outcome[t] == Found) continue;
    v.status = Status::Undecided;
    v.rule = "witness-search";
    v.stuck = inst[t];
    v.detail = (outcome[t] == Unsettled ? why[t] : "no witness within radius " + std::to_string(bounds.witness_radius)) +
               " for x = " + tuple_text(T, inst[t].x);
    return v;
  }
  v.status = Status::Pass;
  v.rule = "witness-search";
  v.witnesses = std::move(inst);
  v.F = F;
  v.detail = std::to_string(v.instances) + " instances, all witnessed";
  return v;
}

bool recheck_hcf(Embedding const& sigma, AuditVerdict const& v) {
  auto const& T = *sigma.target();
  try {
    if (v.status == Status::Pass) {
      if (v.rule == "trivial-subgroup") return all_images_trivial(sigma);
      for (auto const& w : v.witnesses)
        if (!in_H_set(sigma, w.witness, w.x, v.F)) return false;
      return !v.witnesses.empty();
    }
    if (v.status == Status::Fail) {
      for (auto const& p : v.pieces) {
        if (p.core.empty() || !member(sigma, p.core)) return false;
        if (p.whole_group && !is_normal(sigma)) return false;
        for (auto const& h : p.members)
          if (!member(sigma, T.multiply(T.multiply(h, p.core), T.inverse(h)))) return false;
      }
      if (v.rule == "finite-index") {
        // H \ ΣF is empty, so {1} covers it
        std::vector<Code> reps;
        for (auto const& f : v.F) reps.push_back(sigma.decompose(f).rep);
        return closed_cosets(sigma, reps);
      }
      return std::any_of(v.pieces.begin(), v.pieces.end(), [](Piece const& p) { return p.whole_group; });
    }
  } catch (Undecided const&) {
    return false;
  }
  return true;
}

AuditVerdict certify_structural(Embedding const& sigma, AuditBounds const& bounds) {
  bounds.validate();
  auto const& T = *sigma.target();
  AuditVerdict v;
  v.bounds = bounds;
  v.rule = "structural";
  auto const r = bounds.witness_radius;
  std::ostringstream d;
  try {
    // (i) infinite index: the coset count grows with every sphere
    ShortlexEnumerator en(sigma.target());
    std::size_t prev = 0;
    for (int k = 0; k <= r; ++k) {
      auto b = en.ball(k);
      auto reps = coset_reps(sigma, {b.begin(), b.end()});
      if (k > 0 && reps.size() <= prev) {
        if (closed_cosets(sigma, reps)) {
          v.status = Status::Fail;
          v.detail = "(i) finite index " + std::to_string(reps.size());
          v.F = reps;
          return v;
        }
        v.status = Status::Undecided;
        v.detail = "(i) coset count stalls at radius " + std::to_string(k);
        return v;
      }
      prev = reps.size();
    }
    d << "(i) " << prev << " cosets in ball(" << r << ")";
    if (all_images_trivial(sigma)) {
      v.status = Status::Pass;
      v.detail = d.str() + "; (ii), (iii) vacuous";
      return v;
    }
    auto const conj_ball = ball_copy(sigma.target(), r);
    auto const inner_ball = ball_copy(sigma.target(), r - 1);
    auto const small = ball_copy(sigma.target(), bounds.point_radius);
    // (ii) every nontrivial short element of Σ has at least r+1 conjugates
    std::size_t const N = static_cast<std::size_t>(r) + 1;
    std::size_t checked = 0;
    for (std::size_t i = 1; i < small.size(); ++i) {
      if (!member(sigma, small[i])) continue;
      std::unordered_set<Code, CodeHash> conj;
      for (auto const& g : conj_ball) conj.insert(T.multiply(T.multiply(g, small[i]), T.inverse(g)));
      if (conj.size() < N) {
        v.status = Status::Undecided;
        v.stuck = Instance{{small[i]}, {}, {}, 0};
        v.detail = d.str() + "; (ii) " + T.format(small[i]) + " has " + std::to_string(conj.size()) +
                   " conjugates in ball(" + std::to_string(r) + ")";
        return v;
      }
      ++checked;
    }
    d << "; (ii) " << checked << " elements";
    // (iii) conjugates landing in Σ stabilise
    auto landing = [&](std::vector<Code> const& ball, Code const& h) {
      std::set<std::vector<int>> out;
      for (auto const& g : ball) {
        auto c = T.multiply(T.multiply(g, h), T.inverse(g));
        if (member(sigma, c)) out.insert(shortlex_key(T, c));
      }
      return out;
    };
    for (std::size_t i = 1; i < small.size(); ++i) {
      if (landing(conj_ball, small[i]) != landing(inner_ball, small[i])) {
        v.status = Status::Undecided;
        v.stuck = Instance{{small[i]}, {}, {}, 0};
        v.detail = d.str() + "; (iii) conjugates of " + T.format(small[i]) + " in the subgroup still growing";
        return v;
      }
    }
    d << "; (iii) " << small.size() - 1 << " elements stable";
  } catch (Undecided const& e) {
    v.status = Status::Undecided;
    v.detail = e.what();
    return v;
  }
  v.status = Status::Pass;
  v.detail = d.str();
  return v;
}

// ---------------------------------------------------------- action audits

namespace {

struct Shape {
  std::size_t m = 0;
  bool split = false;  // [0,m) ∪ [m,∞) with F empty; otherwise F = [0,m)
  std::size_t head_fixer = 0;
  std::size_t tail_fixer = 0;
  std::size_t instance = 0;
};

bool fixes_all_below(PointAction const& a, std::size_t e, std::size_t m) {
  for (std::size_t p = 0; p < m; ++p)
    if (!a.fixes(e, p)) return false;
  return true;
}

std::optional<std::size_t> tail_fixer(PointAction const& a, std::vector<std::size_t> const& x, std::size_t m) {
  for (auto e : x)
    if (a.fixes_from(e, m) == true) return e;
  return std::nullopt;
}

}  // namespace

AuditVerdict audit_highly_faithful(PointAction& action, AuditBounds const& bounds) {
  bounds.validate();
  action.prepare(bounds);
  AuditVerdict v;
  v.bounds = bounds;
  v.rule = action.name();
  auto const n_elems = action.element_count(bounds.point_radius);
  auto const n_F = action.point_count(bounds.point_radius);
  auto const window = action.point_count(bounds.witness_radius);
  auto const tuples = combinations(n_elems > 0 ? n_elems - 1 : 0, bounds.tuple_max);
  v.instances = tuples.size();

  std::vector<Instance> inst(tuples.size());
  std::vector<char> found(tuples.size(), 0);
  try {
    for_each_index(tuples.size(), [&](std::size_t t) {
      auto& I = inst[t];
      for (auto i : tuples[t]) {
        I.elements.push_back(i + 1);
        I.x.push_back(action.element_code(i + 1));
      }
      for (std::size_t p = n_F; p < window; ++p) {
        bool moved = std::none_of(I.elements.begin(), I.elements.end(), [&](std::size_t e) { return action.fixes(e, p); });
        if (moved) {
          I.point = p;
          found[t] = 1;
          return;
        }
      }
    });
  } catch (Undecided const& e) {
    v.status = Status::Undecided;
    v.detail = e.what();
    return v;
  }

  for (std::int64_t p = 0; p < static_cast<std::int64_t>(n_F); ++p) v.F_points.push_back(p);
  if (std::all_of(found.begin(), found.end(), [](char c) { return c; })) {
    v.status = Status::Pass;
    v.witnesses = std::move(inst);
    v.detail = std::to_string(v.instances) + " instances, all witnessed";
    return v;
  }

  // Exact coverings: [0,m) ∪ [m,∞) (F empty), else F = [0,m) and [m,∞).
  std::optional<Shape> best;
  for (std::size_t t = 0; t < tuples.size() && bounds.covering_max >= 2; ++t) {
    if (found[t]) continue;
    auto const& x = inst[t].elements;
    for (std::size_t m = 1; m <= window; ++m) {
      if (best && best->m <= m) break;
      auto tail = tail_fixer(action, x, m);
      if (!tail) continue;
      for (auto e : x)
        if (fixes_all_below(action, e, m)) {
          best = Shape{m, true, e, *tail, t};
          break;
        }
      if (best && best->m == m) break;
    }
  }
  if (!best) {
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      if (found[t]) continue;
      for (std::size_t m = n_F; m <= window; ++m) {
        auto tail = tail_fixer(action, inst[t].elements, m);
        if (tail) {
          best = Shape{m, false, 0, *tail, t};
          break;
        }
      }
      if (best) break;
    }
  }
  std::size_t first_stuck = std::find(found.begin(), found.end(), 0) - found.begin();
  if (!best) {
    v.status = Status::Undecided;
    v.stuck = inst[first_stuck];
    v.detail = "no moved point in the window and no exact covering";
    return v;
  }

  auto piece = [&](std::int64_t lo, std::int64_t hi, std::size_t e) {
    Piece p;
    p.lo = lo;
    p.hi = hi;
    p.fixer = e;
    p.core = action.element_code(e);
    p.core_text = action.element_text(e);
    p.text = "[" + std::to_string(lo) + ", " + (hi < 0 ? std::string("inf") : std::to_string(hi)) + ")";
    return p;
  };
  auto const m = static_cast<std::int64_t>(best->m);
  v.status = Status::Fail;
  v.stuck = inst[best->instance];
  if (best->split) {
    v.F_points.clear();
    v.pieces.push_back(piece(0, m, best->head_fixer));
    v.pieces.push_back(piece(m, -1, best->tail_fixer));
  } else {
    v.F_points.clear();
    for (std::int64_t p = 0; p < m; ++p) v.F_points.push_back(p);
    v.pieces.push_back(piece(m, -1, best->tail_fixer));
  }
  v.detail = "covering by " + std::to_string(v.pieces.size()) + " pieces with nontrivial common fixers";
  return v;
}

bool recheck_highly_faithful(PointAction& action, AuditVerdict const& v) {
  action.prepare(v.bounds);
  if (v.status == Status::Pass) {
    auto const n_F = action.point_count(v.bounds.point_radius);
    for (auto const& w : v.witnesses) {
      if (w.point < n_F) return false;
      for (auto e : w.elements)
        if (e == 0 || action.fixes(e, w.point)) return false;
    }
    return !v.witnesses.empty();
  }
  if (v.status != Status::Fail) return true;
  // F ∪ pieces must cover N: walk the intervals from 0
  std::set<std::int64_t> F(v.F_points.begin(), v.F_points.end());
  std::vector<Piece> pieces = v.pieces;
  std::sort(pieces.begin(), pieces.end(), [](Piece const& a, Piece const& b) { return a.lo < b.lo; });
  std::int64_t next = 0;
  while (F.contains(next)) ++next;
  bool unbounded = false;
  for (auto const& p : pieces) {
    if (p.fixer == 0) return false;
    if (p.lo > next) return false;
    if (p.hi < 0) {
      if (action.fixes_from(p.fixer, static_cast<std::size_t>(p.lo)) != true) return false;
      unbounded = true;
    } else {
      for (auto q = p.lo; q < p.hi; ++q)
        if (!action.fixes(p.fixer, static_cast<std::size_t>(q))) return false;
      next = std::max(next, p.hi);
    }
    while (F.contains(next)) ++next;
  }
  return unbounded;
}

// ------------------------------------------------------------------ actions

FinitarySymmetricAction::FinitarySymmetricAction(int zone) : zone_(zone) {
  if (zone < 1 || zone > 8) throw Error("finitary action: zone must be in 1..8");
  std::vector<int> p(static_cast<std::size_t>(zone));
  for (int i = 0; i < zone; ++i) p[static_cast<std::size_t>(i)] = i;
  do perms_.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
}

std::string FinitarySymmetricAction::element_text(std::size_t e) const {
  auto const& p = perms_.at(e);
  std::string out;
  std::vector<bool> seen(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      out += (j == i ? "" : " ") + std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "1" : out;
}

Code FinitarySymmetricAction::element_code(std::size_t e) const {
  auto const& p = perms_.at(e);
  return {p.begin(), p.end()};
}

std::size_t FinitarySymmetricAction::point_count(int radius) const { return static_cast<std::size_t>(radius) + 1; }

bool FinitarySymmetricAction::fixes(std::size_t e, std::size_t p) const {
  return p >= perms_[e].size() || perms_[e][p] == static_cast<int>(p);
}

std::optional<bool> FinitarySymmetricAction::fixes_from(std::size_t e, std::size_t m) const {
  for (std::size_t p = m; p < perms_[e].size(); ++p)
    if (perms_[e][p] != static_cast<int>(p)) return false;
  return true;
}

std::size_t FinitarySymmetricAction::find(std::vector<int> const& perm) const {
  auto it = std::find(perms_.begin(), perms_.end(), perm);
  if (it == perms_.end()) throw Error("finitary action: not a permutation of the zone");
  return static_cast<std::size_t>(it - perms_.begin());
}

std::int64_t TranslationAction::decode(std::size_t i) {
  auto const k = static_cast<std::int64_t>((i + 1) / 2);
  return i % 2 ? k : -k;
}

Code TranslationAction::element_code(std::size_t e) const {
  auto d = decode(e);
  return d == 0 ? Code{} : Code{d};
}

CosetAction::CosetAction(std::shared_ptr<Embedding const> sigma) : sigma_(std::move(sigma)) {}

void CosetAction::prepare(AuditBounds const& bounds) {
  elements_.clear();
  element_spheres_.clear();
  reps_.clear();
  rep_spheres_.clear();
  ShortlexEnumerator en(sigma_->target());
  std::unordered_set<Code, CodeHash> seen;
  auto const top = std::max(bounds.point_radius, bounds.witness_radius);
  for (int k = 0; k <= top; ++k) {
    auto b = en.ball(k);
    for (std::size_t i = element_spheres_.empty() ? 0 : elements_.size(); i < b.size(); ++i) {
      elements_.push_back(b[i]);
      auto r = sigma_->decompose(b[i]).rep;
      if (seen.insert(r).second) reps_.push_back(std::move(r));
    }
    element_spheres_.push_back(elements_.size());
    rep_spheres_.push_back(reps_.size());
  }
  finite_index_ = closed_cosets(*sigma_, reps_);
}

std::optional<bool> CosetAction::fixes_from(std::size_t e, std::size_t m) const {
  if (!finite_index_) return std::nullopt;
  for (std::size_t p = m; p < reps_.size(); ++p)
    if (!fixes(e, p)) return false;
  return true;
}

std::size_t CosetAction::element_count(int radius) const {
  return element_spheres_.at(static_cast<std::size_t>(radius));
}

std::string CosetAction::element_text(std::size_t e) const { return sigma_->target()->format(elements_.at(e)); }

std::size_t CosetAction::point_count(int radius) const { return rep_spheres_.at(static_cast<std::size_t>(radius)); }

std::string CosetAction::point_text(std::size_t p) const { return "S " + sigma_->target()->format(reps_.at(p)); }

bool CosetAction::fixes(std::size_t e, std::size_t p) const {
  auto const& T = *sigma_->target();
  auto const& g = reps_.at(p);
  return member(*sigma_, T.multiply(T.multiply(g, T.inverse(elements_.at(e))), T.inverse(g)));
}

}  // namespace htact
