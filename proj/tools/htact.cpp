// htact: audits, normal forms, graph reduction and certified action building.

#include <htact/certificate.hpp>
#include <htact/problem.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace htact;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFail = 2, kUndecided = 3 };

int exit_for(Status s) { return s == Status::Pass ? kOk : s == Status::Fail ? kFail : kUndecided; }

Status worse(Status a, Status b) {
  if (a == Status::Fail || b == Status::Fail) return Status::Fail;
  if (a == Status::Undecided || b == Status::Undecided) return Status::Undecided;
  return Status::Pass;
}

AuditBounds parse_bounds(std::string const& text, AuditBounds b) {
  if (text.empty()) return b;
  std::vector<int> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    auto part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (std::exception const&) {
      throw CLI::ValidationError("--bounds", "expected n,rho,r");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (v.size() != 3) throw CLI::ValidationError("--bounds", "expected n,rho,r");
  b.tuple_max = v[0];
  b.point_radius = v[1];
  b.witness_radius = v[2];
  b.validate();
  return b;
}

void print_verdict(std::string const& subject, std::string const& what, AuditVerdict const& v, Group const* g) {
  std::cout << subject << " " << what << ": " << to_string(v.status) << " [" << v.rule << "] " << v.detail << "\n";
  for (auto const& p : v.pieces) std::cout << "  piece " << p.text << " core " << p.core_text << "\n";
  if (v.stuck && g) {
    std::cout << "  stuck x =";
    for (auto const& x : v.stuck->x) std::cout << " " << g->format(x);
    std::cout << "\n";
  }
}

int cmd_audit(ProblemFile const& p, AuditBounds const& bounds) {
  Status overall = Status::Pass;
  std::vector<std::string> names = p.audits;
  if (names.empty() && p.graph) {
    auto rep = validate_main_hypotheses(*p.graph, bounds);
    for (auto const& c : rep.checks) {
      if (c.verdict) {
        print_verdict(c.subject, c.hypothesis, *c.verdict, nullptr);
      } else {
        std::cout << c.subject << " " << c.hypothesis << ": " << to_string(c.status) << " " << c.detail << "\n";
      }
    }
    overall = rep.overall();
  }
  for (auto const& n : names) {
    auto const& e = *p.embedding(n);
    auto v = audit_hcf(e, bounds);
    print_verdict(n, "hcf", v, e.target().get());
    if (!recheck_hcf(e, v)) {
      std::cout << "  evidence did not re-verify\n";
      v.status = Status::Undecided;
    }
    auto s = certify_structural(e, bounds);
    print_verdict(n, "structural", s, e.target().get());
    overall = worse(overall, v.status);
    if (s.status == Status::Fail) overall = Status::Fail;
  }
  for (auto const& spec : p.actions) {
    auto action = make_action(p, spec);
    auto v = audit_highly_faithful(*action, bounds);
    std::cout << action->name() << " highly-faithful: " << to_string(v.status) << " " << v.detail << "\n";
    for (auto const& pc : v.pieces) std::cout << "  piece " << pc.text << " fixer " << pc.core_text << "\n";
    if (!recheck_highly_faithful(*action, v)) {
      std::cout << "  evidence did not re-verify\n";
      v.status = Status::Undecided;
    }
    overall = worse(overall, v.status);
  }
  std::cout << "overall: " << to_string(overall) << "\n";
  return exit_for(overall);
}

GroupPtr nf_group(ProblemFile const& p, std::string const& name, std::string const& edge) {
  if (!name.empty()) return p.group(name);
  if (p.graph) {
    if (p.graph->edges().empty()) return p.graph->vertices().front().second;
    return edge.empty() ? fundamental_group(*p.graph).group : reduce_edge(*p.graph, edge).pi1.group;
  }
  if (!p.task_group.empty()) return p.group(p.task_group);
  throw Error("no group to work in; pass --group");
}

int cmd_nf(ProblemFile const& p, std::vector<std::string> const& words, std::string const& group,
           std::string const& edge) {
  auto g = nf_group(p, group, edge);
  std::cout << "group: " << g->name() << " (" << to_string(g->kind()) << ")\n";
  for (auto const& w : words) {
    auto c = g->parse(w);
    std::cout << w << " -> " << g->format(c) << "\n";
  }
  return kOk;
}

int cmd_reduce(ProblemFile const& p, std::string const& edge) {
  if (!p.graph) throw Error("problem has no graph");
  auto tree = spanning_tree(*p.graph);
  std::cout << "spanning tree:";
  for (auto const& e : tree) std::cout << " " << e;
  std::cout << "\n";
  auto id = edge.empty() ? select_edge(*p.graph) : edge;
  auto r = reduce_edge(*p.graph, id);
  std::cout << r.describe() << "\n";
  std::cout << "group: " << r.pi1.group->name() << "\n";
  return kOk;
}

std::string step_line(Group const& g, Step const& s) {
  auto point = [&](Point const& x) { return "(" + g.format(x.g) + "," + std::to_string(x.level) + ")"; };
  std::string line = "step " + std::to_string(s.index) + " " + std::string(to_string(s.kind)) + " ";
  if (s.kind == Step::Kind::Faithfulness) {
    line += g.format(s.element) + " moves " + point(s.witness);
  } else {
    for (std::size_t k = 0; k < s.x.size(); ++k) line += (k ? " " : "") + point(s.x[k]) + "->" + point(s.y[k]);
    if (!s.deferred) line += " by " + g.format(s.mover);
  }
  if (s.deferred) line += " deferred: " + s.diagnostic;
  return line;
}

Certificate run_build(ProblemFile const& p, BuildTarget const& t, EngineBudget const& budget, bool log) {
  Engine engine(t.space, budget);
  if (log) engine.on_step([&](Step const& s) { std::cerr << step_line(*t.space->gamma(), s) << "\n"; });
  return engine.run_schedule(p.hash());
}

int cmd_build(ProblemFile const& p, EngineBudget const& budget, std::string const& edge, std::string const& out,
              bool seedless) {
  auto t = build_target(p, edge);
  auto cert = run_build(p, t, budget, true);
  auto text = emit_certificate(cert);
  if (seedless) {
    auto again = emit_certificate(run_build(p, build_target(p, edge), budget, false));
    if (again != text) {
      std::cerr << "htact: two runs produced different certificates\n";
      return kFail;
    }
  }
  if (out.empty())
    std::cout << text;
  else
    write_certificate(cert, out);
  std::cerr << t.name << ": " << cert.steps.size() << " steps, " << cert.deferred() << " deferred, "
            << cert.commits.size() << " committed orbits\n";
  return cert.deferred() ? kUndecided : kOk;
}

int cmd_verify(ProblemFile const& p, std::string const& path, std::string const& edge) {
  auto cert = load_certificate(path);
  if (cert.problem_hash != p.hash()) {
    std::cout << "verify: certificate belongs to a different problem\n";
    return kFail;
  }
  auto t = build_target(p, edge);
  auto rep = verify_certificate(t.space, cert);
  std::cout << "verify: " << (rep.ok ? "ok" : "FAILED " + rep.failure) << "\n";
  if (!rep.ok) return kFail;
  return cert.deferred() ? kUndecided : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Highly transitive actions of graph-of-groups fundamental groups"};
  app.require_subcommand(1);
  std::string problem, bounds_text, edge, out, group, cert_path;
  std::int64_t steps = -1;
  bool seedless = false;
  std::vector<std::string> words;

  auto* audit = app.add_subcommand("audit", "hcf, structural and highly-faithful audits");
  auto* nf = app.add_subcommand("nf", "normal form of words");
  auto* reduce = app.add_subcommand("reduce", "reduce the graph at one edge");
  auto* build = app.add_subcommand("build", "build the action and emit a certificate");
  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  for (auto* sc : {audit, nf, reduce, build, verify}) {
    sc->add_option("problem", problem, "problem file")->required()->check(CLI::ExistingFile);
    sc->add_option("--edge", edge, "edge to reduce at");
  }
  audit->add_option("--bounds", bounds_text, "n,rho,r");
  nf->add_option("words", words, "words to normalize")->required();
  nf->add_option("--group", group, "group name (default: the problem's group)");
  build->add_option("--budget", steps, "number of steps")->check(CLI::NonNegativeNumber);
  build->add_option("--out", out, "certificate path (default: stdout)");
  build->add_flag("--seedless", seedless, "run twice and require identical certificates");
  verify->add_option("certificate", cert_path, "certificate file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    auto p = parse_problem(problem);
    if (*audit) return cmd_audit(p, parse_bounds(bounds_text, p.bounds));
    if (*nf) return cmd_nf(p, words, group, edge);
    if (*reduce) return cmd_reduce(p, edge);
    if (*build) {
      auto budget = p.budget;
      if (steps >= 0) budget.steps = steps;
      return cmd_build(p, budget, edge, out, seedless);
    }
    if (*verify) return cmd_verify(p, cert_path, edge);
  } catch (ProblemError const& e) {
    std::cerr << problem << ":\n" << e.what() << "\n";
    return kUsage;
  } catch (CLI::Error const& e) {
    std::cerr << "htact: " << e.what() << "\n";
    return kUsage;
  } catch (Undecided const& e) {
    std::cerr << "htact: undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (std::exception const& e) {
    std::cerr << "htact: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
