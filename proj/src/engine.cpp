#include <htact/engine.hpp>

#include <htact/search.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace htact {

std::string_view to_string(Step::Kind k) {
  return k == Step::Kind::Transitivity ? "transitivity" : "faithfulness";
}

std::size_t Certificate::deferred() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](Step const& s) { return s.deferred; }));
}

bool step_holds(IntertwinerState const& state, Step const& step) {
  if (step.deferred) return true;
  if (step.kind == Step::Kind::Faithfulness) return !(state.evaluate_pi(step.element, step.witness) == step.witness);
  for (std::size_t k = 0; k < step.x.size(); ++k)
    if (!(state.evaluate_pi(step.mover, step.x[k]) == step.y[k])) return false;
  return true;
}

namespace {

void require_tuples(std::vector<Point> const& x, std::vector<Point> const& y) {
  if (x.empty()) throw Error("transitivity: empty tuple");
  if (x.size() != y.size()) throw Error("transitivity: tuples of different lengths");
  for (auto const* v : {&x, &y})
    for (std::size_t i = 0; i < v->size(); ++i)
      for (std::size_t j = i + 1; j < v->size(); ++j)
        if ((*v)[i] == (*v)[j]) throw Error("transitivity: tuple has a repeated entry");
}

bool all_distinct(std::vector<Point> const& v) {
  std::unordered_set<Point, PointHash> s(v.begin(), v.end());
  return s.size() == v.size();
}

bool disjoint(std::vector<Point> const& a, std::vector<Point> const& b) {
  for (auto const& p : a)
    if (std::find(b.begin(), b.end(), p) != b.end()) return false;
  return true;
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t z) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  std::uint64_t const y = z - w * (w + 1) / 2;
  return {w - y, y};
}

std::uint64_t falling(std::uint64_t m, std::size_t n) {
  if (m < n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= m - i;
  return r;
}

}  // namespace

Engine::Engine(OrbitSpacePtr space, EngineBudget budget, bool check_invariants)
    : space_(std::move(space)),
      budget_(budget),
      checking_(check_invariants),
      state_(space_),
      gamma_en_(space_->gamma()),
      factor_en_{ShortlexEnumerator(space_->composite().factor(0)),
                 ShortlexEnumerator(space_->composite().factor(space_->composite().num_factors() - 1))} {}

Point Engine::point_at(std::uint64_t index) {
  auto [i, level] = unpair(index);
  auto const* g = gamma_en_.at(i);
  if (!g) throw Error("point index out of range");
  return {*g, static_cast<std::int64_t>(level)};
}

std::vector<std::uint64_t> Engine::injective_tuple(std::size_t n, std::uint64_t rank) {
  if (n == 0) return {};
  // Tuples are ordered by their maximum entry, then by the position of the
  // maximum, then lexicographically.
  std::uint64_t top = n - 1;
  while (falling(top + 1, n) <= rank) ++top;
  std::uint64_t r = rank - falling(top, n);
  auto const block = falling(top, n - 1);
  auto const pos = r / block;
  r %= block;
  std::vector<std::uint64_t> pool(top);
  for (std::uint64_t i = 0; i < top; ++i) pool[i] = i;
  std::vector<std::uint64_t> out;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    auto const b = falling(top - 1 - j, n - 2 - j);
    auto const idx = r / b;
    r %= b;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), top);
  return out;
}

std::optional<Code> Engine::search(GroupPtr const&, ShortlexEnumerator& en,
                                   std::function<bool(Code const&)> const& pred) const {
  for (int r = 0; r <= budget_.witness_radius; ++r) {
    auto const lo = en.sphere_start(r);
    if (lo > budget_.witness_candidates) break;
    auto const hi = en.sphere_start(r + 1);
    if (lo == hi) break;
    auto ball = en.ball(r);
    auto hit = first_match(hi - lo, [&](std::size_t i) { return pred(ball[lo + i]); });
    if (hit != npos) return ball[lo + hit];
  }
  return std::nullopt;
}

Step Engine::extend_transitivity(std::vector<Point> const& x, std::vector<Point> const& y) {
  require_tuples(x, y);
  return space_->mode() == Mode::Hnn ? extend_hnn(x, y) : extend_amalgam(x, y);
}

Step Engine::extend_hnn(std::vector<Point> const& x, std::vector<Point> const& y) {
  auto const& G = *space_->hnn();
  auto const& H = G.base();
  auto const n = x.size();
  Step step;
  step.kind = Step::Kind::Transitivity;
  step.x = x;
  step.y = y;

  auto target_reps = [&](Code const& hp) {
    auto inc = G.include(0, hp);
    std::vector<Point> t;
    for (auto const& p : y) t.push_back(space_->target_split(space_->act(inc, p)).rep);
    return t;
  };
  // g^-1 = h' moves every y_k into a fresh theta(Sigma)-orbit.
  auto hp = search(H, factor_en_[0], [&](Code const& c) {
    auto t = target_reps(c);
    for (auto const& p : t)
      if (state_.target_committed(p)) return false;
    return all_distinct(t);
  });
  if (!hp) {
    step.deferred = true;
    step.diagnostic = "no element of the base group separates the targets within radius " +
                      std::to_string(budget_.witness_radius);
    return step;
  }
  auto const hp_inc = G.include(0, *hp);
  std::vector<Point> u, u_reps;
  for (auto const& p : y) {
    u.push_back(space_->default_inverse(space_->act(hp_inc, p)));
    u_reps.push_back(space_->source_split(u.back()).rep);
  }
  auto h = search(H, factor_en_[0], [&](Code const& c) {
    auto inc = G.include(0, c);
    std::vector<Point> s;
    for (auto const& p : x) {
      s.push_back(space_->source_split(space_->act(inc, p)).rep);
      if (state_.source_committed(s.back())) return false;
    }
    return all_distinct(s) && disjoint(s, u_reps);
  });
  if (!h) {
    step.deferred = true;
    step.diagnostic = "no element of the base group separates the sources within radius " +
                      std::to_string(budget_.witness_radius);
    return step;
  }
  auto const h_inc = G.include(0, *h);
  for (std::size_t k = 0; k < n; ++k) {
    auto hx = space_->act(h_inc, x[k]);
    step.batch.emplace_back(hx, space_->act(hp_inc, y[k]));
    step.batch.emplace_back(u[k], space_->default_image(hx));
  }
  state_.commit_batch(step.batch);
  auto const g = H->inverse(*hp);
  step.witnesses = {{"g", g}, {"h", *h}};
  step.mover = G.multiply(G.multiply(G.include(0, g), G.stable_letter()), h_inc);
  return step;
}

Step Engine::extend_amalgam(std::vector<Point> const& x, std::vector<Point> const& y) {
  auto const& G = *space_->amalgam();
  auto const n = x.size();
  Step step;
  step.kind = Step::Kind::Transitivity;
  step.x = x;
  step.y = y;

  auto free_orbit = [&](Point const& rep) {
    return !state_.source_committed(rep) && !state_.target_committed(space_->target_split(rep).rep);
  };
  auto reps_under = [&](int f, Code const& c, std::vector<Point> const& pts) {
    auto inc = G.include(f, c);
    std::vector<Point> s;
    for (auto const& p : pts) s.push_back(space_->source_split(space_->act(inc, p)).rep);
    return s;
  };
  auto fresh_distinct = [&](std::vector<Point> const& s) {
    return all_distinct(s) && std::all_of(s.begin(), s.end(), free_orbit);
  };
  auto defer = [&](char const* what) {
    step.deferred = true;
    step.diagnostic = std::string("no ") + what + " within radius " + std::to_string(budget_.witness_radius);
    return step;
  };

  auto g1 = search(G.factor(0), factor_en_[0], [&](Code const& c) { return fresh_distinct(reps_under(0, c, x)); });
  if (!g1) return defer("first-factor element for the sources");
  auto const a = reps_under(0, *g1, x);
  auto g2inv = search(G.factor(0), factor_en_[0], [&](Code const& c) {
    auto b = reps_under(0, c, y);
    return fresh_distinct(b) && disjoint(b, a);
  });
  if (!g2inv) return defer("first-factor element for the targets");
  auto const b = reps_under(0, *g2inv, y);
  std::vector<Point> avoid = a;
  avoid.insert(avoid.end(), b.begin(), b.end());
  auto z = state_.allocate_fresh_orbits(n, avoid);
  avoid.insert(avoid.end(), z.begin(), z.end());
  auto h = search(G.factor(1), factor_en_[1], [&](Code const& c) {
    auto s = reps_under(1, c, z);
    return fresh_distinct(s) && disjoint(s, avoid);
  });
  if (!h) return defer("second-factor element for the fresh orbits");

  auto const g1_inc = G.include(0, *g1);
  auto const g2inv_inc = G.include(0, *g2inv);
  auto const h_inc = G.include(1, *h);
  for (std::size_t k = 0; k < n; ++k) {
    auto gx = space_->act(g1_inc, x[k]);
    auto gy = space_->act(g2inv_inc, y[k]);
    auto hz = space_->act(h_inc, z[k]);
    step.batch.emplace_back(gx, z[k]);
    step.batch.emplace_back(gy, hz);
    step.batch.emplace_back(z[k], gx);
    step.batch.emplace_back(hz, gy);
  }
  state_.commit_batch(step.batch);
  auto const g2 = G.factor(0)->inverse(*g2inv);
  step.fresh = z;
  step.witnesses = {{"g1", *g1}, {"g2", g2}, {"h", *h}};
  step.mover = G.multiply(G.multiply(G.include(0, g2), h_inc), g1_inc);
  return step;
}

Step Engine::ensure_faithful(Code const& g) {
  if (g.empty()) throw Error("faithfulness: element is the identity");
  Step step;
  step.kind = Step::Kind::Faithfulness;
  step.element = g;
  auto const level = state_.lowest_open_level(state_.ceiling() + 1);
  step.witness = {{}, level};
  std::vector<Point> touched;
  auto image = state_.evaluate_pi(g, step.witness, [&](Point const& rep) {
    if (std::find(touched.begin(), touched.end(), rep) == touched.end()) touched.push_back(rep);
  });
  if (image == step.witness) throw Error("faithfulness: element fixes a point on an untouched level");
  // The trajectory ran on defaults only; pin those orbits so it persists.
  std::vector<Point> pinned;
  for (auto const& rep : touched)
    if (!state_.source_committed(rep)) pinned.push_back(rep);
  state_.protect(pinned);
  state_.freeze(level);
  step.protect = std::move(pinned);
  return step;
}

void Engine::record(Step step) {
  step.index = static_cast<std::int64_t>(steps_.size());
  steps_.push_back(std::move(step));
  if (checking_) check_invariants();
  if (on_step_) on_step_(steps_.back());
}

Certificate Engine::run_schedule(std::uint64_t problem_hash) {
  auto const start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (budget_.wall_seconds <= 0) return false;
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return dt.count() > budget_.wall_seconds;
  };
  std::vector<std::uint64_t> counters;
  std::int64_t done = 0;
  auto const limit = budget_.steps;
  for (std::size_t round = 1; done < limit && !out_of_time(); ++round) {
    auto const* g = gamma_en_.at(round);
    if (g) {
      record(ensure_faithful(Code(*g)));
      ++done;
    }
    if (counters.size() < round) counters.resize(round, 0);
    for (std::size_t n = 1; n <= round && done < limit && !out_of_time(); ++n) {
      auto [a, b] = unpair(counters[n - 1]++);
      std::vector<Point> x, y;
      for (auto i : injective_tuple(n, a)) x.push_back(point_at(i));
      for (auto i : injective_tuple(n, b)) y.push_back(point_at(i));
      record(extend_transitivity(x, y));
      ++done;
    }
  }
  Certificate cert;
  cert.problem_hash = problem_hash;
  cert.mode = space_->mode();
  cert.group = space_->gamma()->name();
  cert.budget = budget_;
  cert.steps = steps_;
  cert.commits = state_.commits();
  cert.frozen = state_.frozen();
  cert.ceiling = state_.ceiling();
  return cert;
}

// ------------------------------------------------------------- invariants

void Engine::check_invariants() {
  auto& rep = report_;
  auto fail = [&](std::string msg) {
    rep.violations.push_back("step " + std::to_string(steps_.size() - 1) + ": " + std::move(msg));
  };
  ++rep.steps_checked;
  auto const& S = state_;
  auto const& sp = *space_;
  auto const& E = *sp.edge();
  auto const& commits = S.commits();

  // monotonicity: the commit list only grows
  if (last_commits_.size() > commits.size()) fail("commit list shrank");
  for (std::size_t i = 0; i < std::min(last_commits_.size(), commits.size()); ++i)
    if (!(last_commits_[i].src == commits[i].src) || !(last_commits_[i].dst == commits[i].dst) ||
        last_commits_[i].e0 != commits[i].e0)
      fail("committed orbit changed");
  last_commits_ = commits;

  // equivariance and anchors
  std::unordered_set<Point, PointHash> dsts, defaults;
  for (auto const& c : commits) {
    ++rep.equivariance;
    auto wx = S.evaluate_w(c.src);
    if (!(wx == sp.act(sp.phi().apply(c.e0), c.dst))) fail("anchor does not evaluate to its target");
    for (std::size_t i = 0; i < E.num_generators(); ++i) {
      auto s = E.generator(i);
      if (!(S.evaluate_w(sp.act(sp.psi().apply(s), c.src)) == sp.act(sp.phi().apply(s), wx)))
        fail("equivariance broken at a committed orbit");
    }
    if (c.src.level > S.ceiling() || c.dst.level > S.ceiling()) fail("committed orbit above the ceiling");
    dsts.insert(c.dst);
    defaults.insert(sp.target_split(sp.default_image(c.src)).rep);
  }
  if (dsts != defaults) fail("committed targets are not a permutation of default images");

  // bijectivity and level preservation on a sample
  std::mt19937_64 rng(0x5eed0000u + steps_.size());
  auto ball = gamma_en_.ball(3);
  std::vector<Point> sample;
  for (std::size_t i = 0; i < sample_size_; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    std::uniform_int_distribution<std::int64_t> lvl(0, S.ceiling() + 1);
    sample.push_back({ball[pick(rng)], lvl(rng)});
  }
  for (auto const& c : commits) {
    sample.push_back(c.src);
    sample.push_back(c.dst);
  }
  for (auto const& p : sample) {
    ++rep.bijectivity;
    if (!(S.evaluate_w_inverse(S.evaluate_w(p)) == p)) fail("w^-1 w is not the identity");
    if (!(S.evaluate_w(S.evaluate_w_inverse(p)) == p)) fail("w w^-1 is not the identity");
    if (!S.source_committed(sp.source_split(p).rep)) {
      ++rep.levels;
      if (S.evaluate_w(p).level != p.level) fail("default image changed level");
    }
  }

  // pi is a homomorphism on sampled triples
  auto small = gamma_en_.ball(2);
  for (std::size_t i = 0; i < 50 && !small.empty(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    auto const& a = small[pick(rng)];
    auto const& b = small[pick(rng)];
    auto const& p = sample[i % sample.size()];
    ++rep.homomorphism;
    auto lhs = S.evaluate_pi(sp.gamma()->multiply(a, b), p);
    if (!(lhs == S.evaluate_pi(a, S.evaluate_pi(b, p)))) fail("pi is not a homomorphism");
  }

  // every discharged postcondition still holds
  for (auto const& s : steps_) {
    ++rep.persistence;
    if (!step_holds(S, s)) fail(std::string(to_string(s.kind)) + " step " + std::to_string(s.index) + " no longer holds");
  }
}

// ------------------------------------------------------------ verification

VerifyReport verify_certificate(OrbitSpacePtr const& space, Certificate const& cert) {
  auto bad = [](std::string msg) { return VerifyReport{false, std::move(msg)}; };
  if (cert.mode != space->mode()) return bad("mode does not match the problem");
  IntertwinerState state(space);
  auto const& sp = *space;
  auto const& E = *sp.edge();
  auto uses_defaults = [&](Code const& g, Point const& p) {
    bool hit = false;
    state.evaluate_pi(g, p, [&](Point const&) { hit = true; });
    return hit;
  };

  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    auto const& s = cert.steps[i];
    auto const tag = "step " + std::to_string(i) + " (" + std::string(to_string(s.kind)) + "): ";
    if (s.index != static_cast<std::int64_t>(i)) return bad(tag + "index out of order");
    if (s.deferred) {
      if (!s.batch.empty() || !s.protect.empty()) return bad(tag + "deferred step carries commitments");
      continue;
    }
    auto before = state.commits().size();
    try {
      if (s.kind == Step::Kind::Transitivity) {
        require_tuples(s.x, s.y);
        state.commit_batch(s.batch);
        state.protect(s.protect);
      } else {
        if (s.element.empty()) return bad(tag + "identity element");
        if (state.is_frozen(s.witness.level) || s.witness.level <= state.ceiling())
          return bad(tag + "witness level was not fresh");
        if (!s.batch.empty()) return bad(tag + "faithfulness step carries a batch");
        state.protect(s.protect);
        state.freeze(s.witness.level);
      }
    } catch (Error const& e) {
      return bad(tag + e.what());
    }
    for (auto k = before; k < state.commits().size(); ++k) {
      auto const& c = state.commits()[k];
      auto wx = state.evaluate_w(c.src);
      for (std::size_t j = 0; j < E.num_generators(); ++j) {
        auto g = E.generator(j);
        if (!(state.evaluate_w(sp.act(sp.psi().apply(g), c.src)) == sp.act(sp.phi().apply(g), wx)))
          return bad(tag + "equivariance fails at a committed orbit");
      }
    }
    if (s.kind == Step::Kind::Transitivity) {
      for (auto const& p : s.x)
        if (uses_defaults(s.mover, p)) return bad(tag + "mover trajectory leaves the committed orbits");
    } else if (uses_defaults(s.element, s.witness)) {
      return bad(tag + "witness trajectory is not pinned");
    }
    for (std::size_t j = 0; j <= i; ++j)
      if (!step_holds(state, cert.steps[j]))
        return bad(tag + "postcondition of step " + std::to_string(j) + " fails");
  }

  // faithfulness trajectories must still run on default values
  for (auto const& s : cert.steps) {
    if (s.deferred || s.kind != Step::Kind::Faithfulness) continue;
    Point expect = sp.act(s.element, s.witness);
    if (!(state.evaluate_pi(s.element, s.witness) == expect))
      return bad("step " + std::to_string(s.index) + ": frozen-level witness was rewired");
  }

  auto const& commits = state.commits();
  if (commits.size() != cert.commits.size()) return bad("final state has a different number of commitments");
  for (std::size_t k = 0; k < commits.size(); ++k)
    if (!(commits[k].src == cert.commits[k].src) || !(commits[k].dst == cert.commits[k].dst) ||
        commits[k].e0 != cert.commits[k].e0)
      return bad("final state commitment " + std::to_string(k) + " differs from the replay");
  if (state.frozen() != cert.frozen) return bad("frozen levels differ from the replay");
  if (state.ceiling() != cert.ceiling) return bad("ceiling differs from the replay");
  return {};
}

}  // namespace htact
