#include <benchmark/benchmark.h>

#include "infobound/bounds.hpp"
#include "infobound/measures.hpp"
#include "infobound/problem.hpp"
#include "infobound/verify.hpp"

namespace {

using namespace infobound;

ProblemSpec extended_spec(int n) {
  LearningProblem problem(Alphabet({"0", "1", "2"}),
                          Alphabet({"0", "1", "2", "3", "4"}),
                          {{0.0, 0.5, 1.0},
                           {0.25, 0.0, 0.75},
                           {1.0, 0.25, 0.0},
                           {0.5, 1.0, 0.25},
                           {0.75, 0.25, 0.5}},
                          std::nullopt);
  FiniteDistribution p_z = make_distribution({"0", "1", "2"}, {1, 1, 1});
  LearnerSpec learner;
  learner.kind = LearnerKind::kGibbs;
  learner.beta = 1.0;
  return ProblemSpec{std::move(problem), std::move(p_z), learner, n};
}

void BM_BuildJoint(benchmark::State& state) {
  const auto spec = extended_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_model(spec));
  }
}
BENCHMARK(BM_BuildJoint)->Arg(4)->Arg(6)->Arg(8);

void BM_InformationProfile(benchmark::State& state) {
  const auto spec = extended_spec(static_cast<int>(state.range(0)));
  const auto model = build_model(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(information_profile(model));
  }
}
BENCHMARK(BM_InformationProfile)->Arg(6)->Arg(8);

void BM_AlphaMutualInformation(benchmark::State& state) {
  const auto model = build_model(extended_spec(6));
  const double alpha = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_mutual_information(model, alpha));
  }
}
BENCHMARK(BM_AlphaMutualInformation)->Arg(2)->Arg(10000);

void BM_Theorem1Check(benchmark::State& state) {
  const auto spec = extended_spec(static_cast<int>(state.range(0)));
  const auto model = build_model(spec);
  const auto grid = default_lambda_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        theorem1_check(model, spec.problem, 0.5, grid));
  }
}
BENCHMARK(BM_Theorem1Check)->Arg(4)->Arg(6);

void BM_CoverageSingleDraw(benchmark::State& state) {
  const auto spec = extended_spec(6);
  const auto model = build_model(spec);
  BoundQuery query;
  query.bound_id = BoundId::kSingleDrawMoment;
  query.delta = 0.1;
  query.m = 2.0;
  query.sigma = 0.5;
  query.n = 6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage_single_draw(model, spec.problem, query));
  }
}
BENCHMARK(BM_CoverageSingleDraw);

void BM_MonteCarlo(benchmark::State& state) {
  const auto spec = extended_spec(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage_monte_carlo(
        spec.problem, spec.learner, spec.p_z, 6, BoundId::kSingleDrawMoment,
        0.5, static_cast<std::uint64_t>(state.range(0)), 1));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
