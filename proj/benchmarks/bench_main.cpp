#include <benchmark/benchmark.h>

#include <json.hpp>

#include "gca/debruijn.hpp"
#include "gca/decide.hpp"
#include "gca/io.hpp"
#include "gca/linear.hpp"
#include "gca/simulate.hpp"

namespace {

gca::Gca linear_rule(const char* rows) {
  return gca::rule_from_json(nlohmann::json::parse(std::string(R"({"prime":2,"laurent":)") + rows + "}"));
}

gca::FiniteGroup a5() { return gca::FiniteGroup::permutation(5, {{1, 2, 0, 3, 4}, {1, 2, 3, 4, 0}}); }

void BM_DeBruijnInjectivity(benchmark::State& st) {
  gca::Gca f = linear_rule(R"([["1","X"],["X","X^-1 + X"]])");
  for (auto _ : st) benchmark::DoNotOptimize(gca::is_injective(f));
}
BENCHMARK(BM_DeBruijnInjectivity);

void BM_Surjectivity(benchmark::State& st) {
  gca::Gca f = linear_rule(R"([["X^-1 + 1 + X"]])");
  for (auto _ : st) benchmark::DoNotOptimize(gca::is_surjective(f));
}
BENCHMARK(BM_Surjectivity);

void BM_LinearExpansivity(benchmark::State& st) {
  gca::LaurentMatrix m = gca::LaurentMatrix::parse({{"0", "1"}, {"1", "X"}}, 2);
  for (auto _ : st) benchmark::DoNotOptimize(gca::lin_is_expansive(m));
}
BENCHMARK(BM_LinearExpansivity);

void BM_TrappedProjection(benchmark::State& st) {
  gca::LaurentMatrix m = gca::LaurentMatrix::parse({{"X + X^-1", "0"}, {"0", "1"}}, 2);
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(gca::trapped_projection(m, k, gca::Side::Left));
}
BENCHMARK(BM_TrappedProjection)->Arg(4)->Arg(12)->Arg(24);

void BM_DecideExpansiveA5(benchmark::State& st) {
  gca::Gca f = gca::Gca::shift(a5());
  for (auto _ : st) benchmark::DoNotOptimize(gca::decide_expansive(f));
}
BENCHMARK(BM_DecideExpansiveA5);

void BM_FrontOracle(benchmark::State& st) {
  gca::Gca f = linear_rule(R"([["X^-1 + X"]])");
  for (auto _ : st) benchmark::DoNotOptimize(gca::front_escape_oracle(f, 6, 40, gca::OracleMode::Positive));
}
BENCHMARK(BM_FrontOracle);

void BM_Spacetime(benchmark::State& st) {
  gca::Gca f = linear_rule(R"([["X^-1 + 1 + X"]])");
  gca::Configuration c = gca::Configuration::finite({{0, 1}});
  const int steps = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(gca::spacetime(f, c, steps));
}
BENCHMARK(BM_Spacetime)->Arg(64)->Arg(256);

}  // namespace
BENCHMARK_MAIN();
