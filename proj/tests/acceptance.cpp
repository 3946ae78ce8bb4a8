// One line per acceptance criterion; exit status 1 when any fails.

#include "oracles.hpp"
#include "support.hpp"

#include <htact/certificate.hpp>

#include <chrono>
#include <functional>
#include <iostream>

using namespace htact;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, std::string const& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

template <class Fn>
bool criterion(int n, double limit_s, Fn&& fn) {
  auto const start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    fn(o);
  } catch (std::exception const& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double const s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0) o.require(s < limit_s, "over the time limit");
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", s);
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << t << ")"
            << (o.detail.empty() ? "" : " " + o.detail) << std::endl;
  return o.pass;
}

std::vector<Code> ball(GroupPtr const& g, int r) {
  std::vector<Code> out;
  for (auto const& e : enumerate_ball(g, r)) out.push_back(e.code());
  return out;
}

void word_problem(Outcome& o) {
  auto bs = support::fixture("bs12");
  auto a = oracle::agree_on_all_words<oracle::Affine>(*bs.group("BS"), 6, oracle::bs_matrix);
  auto psl = support::fixture("z2-z3");
  auto b = oracle::agree_on_all_words<oracle::Psl>(*psl.group("PSL"), 6, oracle::psl_matrix);
  o.require(a.disagreements == 0, "BS(1,2) disagrees on " + std::to_string(a.disagreements) + " words");
  o.require(b.disagreements == 0, "Z2*Z3 disagrees on " + std::to_string(b.disagreements) + " words");
  o.detail = std::to_string(a.words) + " + " + std::to_string(b.words) + " words, " + std::to_string(a.classes) +
             " + " + std::to_string(b.classes) + " elements" + (o.detail.empty() ? "" : "; " + o.detail);
}

void surface_relation(Outcome& o) {
  auto p = support::fixture("pi1-sigma2");
  auto G = fundamental_group(*p.graph).group;
  // [a1,b1] [a2,b2]^-1
  auto c = G->multiply(G->parse("a1 b1 a1^-1 b1^-1"), G->inverse(G->parse("a2 b2 a2^-1 b2^-1")));
  o.require(c.empty(), "normal form is " + G->format(c));
  o.require(!G->parse("a1 b1 a1^-1 b1^-1").empty(), "the commutator itself vanished");
}

void hcf_positive(Outcome& o) {
  auto p = support::fixture("audits");
  AuditBounds b;  // n = 2, rho = 2, r = 4
  for (auto const& n : {"commutator", "trivial", "units"}) {
    auto const& e = *p.embedding(n);
    auto v = audit_hcf(e, b);
    o.require(v.status == Status::Pass, std::string(n) + " hcf " + std::string(to_string(v.status)));
    o.require(recheck_hcf(e, v), std::string(n) + " evidence does not re-verify");
    auto s = certify_structural(e, b);
    o.require(s.status == Status::Pass, std::string(n) + " structural " + std::string(to_string(s.status)));
  }
}

void hcf_negative(Outcome& o) {
  auto p = support::fixture("audits");
  AuditBounds b;
  auto const& even = *p.embedding("even");
  auto v = audit_hcf(even, b);
  o.require(v.status == Status::Fail, "2Z < Z did not fail");
  o.require(v.pieces.size() == 1 && v.pieces[0].members == std::vector<Code>{Code{}}, "covering is not S1 = {1}");
  o.require(recheck_hcf(even, v), "2Z counterexample does not re-verify");

  FinitarySymmetricAction s(5);
  auto w = audit_highly_faithful(s, b);
  o.require(w.status == Status::Fail, "S_inf action did not fail");
  o.require(w.pieces.size() == 2 && w.pieces[0].lo == 0 && w.pieces[0].hi == 2 && w.pieces[1].lo == 2 &&
                w.pieces[1].hi == -1,
            "covering is not {0,1} u {k >= 2}");
  o.require(recheck_highly_faithful(s, w), "S_inf counterexample does not re-verify");
}

void transports(Outcome& o) {
  auto p = support::fixture("audits");
  AuditBounds b;
  auto const& comm = *p.embedding("commutator");
  auto const& H = *comm.target();
  auto pts = ball(comm.target(), b.point_radius);
  std::vector<std::vector<Code>> Fs{{}, {Code{}}, ball(comm.target(), 1)};
  std::size_t g_total = 0, g_ok = 0, e_total = 0, e_ok = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::vector<Code> x{pts[i], pts[j]};
      for (auto const& F : Fs) {
        auto t = g_set_transport(H, x, F);
        if (auto h = search_H_set(comm, t.y, t.F, b.witness_radius)) {
          ++g_total;
          g_ok += in_G_set(comm, *h, x, F);
        }
      }
      for (std::int64_t lj : {0, 1}) {
        std::vector<Point> xp{{pts[i], 0}, {pts[j], lj}};
        std::vector<Point> Fp{{Code{}, 0}, {H.parse("a"), 1}};
        auto t = e_set_transport(comm, xp, Fp);
        if (auto g = search_G_set(comm, t.y, t.F, b.witness_radius)) {
          ++e_total;
          e_ok += in_E_set(comm, *g, xp, Fp);
        }
      }
    }
  o.require(g_total > 0 && e_total > 0, "no instances");
  o.require(g_ok == g_total, "H to G transport failed on " + std::to_string(g_total - g_ok));
  o.require(e_ok == e_total, "G to E transport failed on " + std::to_string(e_total - e_ok));
  o.detail = "H->G " + std::to_string(g_ok) + "/" + std::to_string(g_total) + ", G->E " + std::to_string(e_ok) + "/" +
             std::to_string(e_total) + (o.detail.empty() ? "" : "; " + o.detail);
}

struct EngineRun {
  std::string fixture;
  std::size_t violations = 0;
  std::size_t checks = 0;
};

std::vector<EngineRun> engine_runs;

void engine_fixture(Outcome& o, std::string const& name) {
  auto const start = std::chrono::steady_clock::now();
  auto p = support::fixture(name);
  auto budget = p.budget;
  budget.steps = 50;
  auto t = build_target(p);
  Engine e(t.space, budget, true);
  auto cert = e.run_schedule(p.hash());
  o.require(cert.steps.size() == 50, name + ": " + std::to_string(cert.steps.size()) + " steps");
  o.require(cert.deferred() == 0, name + ": " + std::to_string(cert.deferred()) + " deferred");
  auto rep = verify_certificate(build_target(p).space, cert);
  o.require(rep.ok, name + ": verify failed: " + rep.failure);
  for (auto const& s : cert.steps) {
    if (s.kind == Step::Kind::Faithfulness) {
      o.require(!(e.state().evaluate_pi(s.element, s.witness) == s.witness), name + ": witness fixed");
    } else {
      for (std::size_t k = 0; k < s.x.size(); ++k)
        o.require(e.state().evaluate_pi(s.mover, s.x[k]) == s.y[k], name + ": mover replay failed");
    }
  }
  Engine again(build_target(p).space, budget);
  o.require(emit_certificate(again.run_schedule(p.hash())) == emit_certificate(cert), name + ": runs differ");
  double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 120, name + ": over 120s");
  auto const& inv = e.invariants();
  engine_runs.push_back({name, inv.violations.size(),
                         inv.equivariance + inv.bijectivity + inv.levels + inv.persistence + inv.homomorphism});
}

void invariants(Outcome& o) {
  std::size_t checks = 0;
  for (auto const& r : engine_runs) {
    o.require(r.violations == 0, r.fixture + ": " + std::to_string(r.violations) + " violations");
    checks += r.checks;
  }
  o.require(engine_runs.size() == 4, "only " + std::to_string(engine_runs.size()) + " engine runs");
  o.detail = std::to_string(checks) + " invariant checks over " + std::to_string(engine_runs.size()) + " runs" +
             (o.detail.empty() ? "" : "; " + o.detail);
}

void graph_reduction(Outcome& o) {
  auto kind = [](std::string const& name) {
    auto p = support::fixture(name);
    return reduce_edge(*p.graph, select_edge(*p.graph));
  };
  o.require(kind("pi1-sigma2").mode == Mode::Amalgam, "surface graph is not an amalgam");
  o.require(kind("gaussian-hnn").mode == Mode::Hnn, "gaussian loop is not an HNN");
  auto th = kind("theta");
  o.require(th.mode == Mode::Hnn && th.hnn->base()->kind() == GroupKind::Amalgam, "theta is not HNN over an amalgam");

  AuditBounds b;
  auto fv = validate_main_hypotheses(*support::fixture("finite-vertex").graph, b);
  bool finite = false;
  for (auto const& c : fv.checks) finite |= c.subject == "finite" && c.hypothesis == "infinite" && c.status == Status::Fail;
  o.require(finite && fv.overall() == Status::Fail, "finite vertex group not flagged");
  auto fi = validate_main_hypotheses(*support::fixture("finite-index-edge").graph, b);
  bool index = false;
  for (auto const& c : fi.checks) index |= c.subject == "e.s" && c.hypothesis == "hcf" && c.status == Status::Fail;
  o.require(index && fi.overall() == Status::Fail, "finite-index edge group not flagged");
  auto ok = validate_main_hypotheses(*support::fixture("pi1-sigma2").graph, b);
  o.require(ok.overall() == Status::Pass, "surface graph hypotheses do not pass");
}

}  // namespace

int main() {
  bool all = true;
  all &= criterion(1, 30, word_problem);
  all &= criterion(2, 0, surface_relation);
  all &= criterion(3, 60, hcf_positive);
  all &= criterion(4, 0, hcf_negative);
  all &= criterion(5, 0, transports);
  all &= criterion(6, 0, [](Outcome& o) {
    for (auto const& n : {"free-zz", "pi1-sigma2"}) engine_fixture(o, n);
  });
  all &= criterion(7, 0, [](Outcome& o) {
    for (auto const& n : {"hnn-f2", "gaussian-hnn"}) engine_fixture(o, n);
  });
  all &= criterion(8, 0, invariants);
  all &= criterion(9, 0, graph_reduction);
  return all ? 0 : 1;
}
