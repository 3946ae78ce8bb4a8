// Serial reference against the OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <htact/hcf_audit.hpp>
#include <htact/problem.hpp>
#include <htact/search.hpp>

#include <benchmark/benchmark.h>

using namespace htact;

namespace {

ProblemFile const& audits() {
  static ProblemFile p = parse_problem(std::string(HTACT_FIXTURES) + "/audits.json");
  return p;
}

struct Mode {
  explicit Mode(benchmark::State const& s) : was(parallel_enabled()) { set_parallel(s.range(0) != 0); }
  ~Mode() { set_parallel(was); }
  bool was;
};

void BM_audit_hcf(benchmark::State& state) {
  Mode m(state);
  auto const& e = *audits().embedding("commutator");
  AuditBounds b;
  b.witness_radius = 5;
  for (auto _ : state) benchmark::DoNotOptimize(audit_hcf(e, b));
}

void BM_certify_structural(benchmark::State& state) {
  Mode m(state);
  auto const& e = *audits().embedding("commutator");
  AuditBounds b;
  b.witness_radius = 5;
  for (auto _ : state) benchmark::DoNotOptimize(certify_structural(e, b));
}

void BM_highly_faithful_cosets(benchmark::State& state) {
  Mode m(state);
  CosetAction c(audits().embedding("commutator"));
  AuditBounds b;
  b.point_radius = 3;
  b.witness_radius = 4;
  for (auto _ : state) benchmark::DoNotOptimize(audit_highly_faithful(c, b));
}

// No witness exists, so the whole ball is scanned.
void BM_search_H_set_exhaustive(benchmark::State& state) {
  Mode m(state);
  auto const& e = *audits().embedding("even");
  for (auto _ : state) benchmark::DoNotOptimize(search_H_set(e, {Code{2}}, {Code{}, Code{1}}, 20000));
}

}  // namespace

BENCHMARK(BM_audit_hcf)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_certify_structural)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_highly_faithful_cosets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search_H_set_exhaustive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
