#include "sotangent/jet_lift.hpp"
#include "sotangent/optimality.hpp"
#include "sotangent/parser.hpp"
#include "sotangent/sampler.hpp"

#include <benchmark/benchmark.h>

namespace sot {
namespace {

PolySystem S(std::vector<const char*> gens, std::size_t n) {
  std::vector<Polynomial<Rational>> ps;
  for (auto g : gens) ps.push_back(parse_polynomial(g, n));
  return PolySystem(n, std::move(ps));
}

void BM_Parse(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_polynomial("x1*x2^3 - 3/7*x3^2*x4 + x4^5 - 2*x1*x2*x3*x4 + 11", 4));
}
BENCHMARK(BM_Parse);

void BM_ComposeSeries(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  const auto f = parse_polynomial("x1*x2^3 - x3^2*x4 + x4^5 - 2*x1*x2*x3*x4", 4);
  TruncatedSeries<Rational> s(4, order);
  for (std::size_t k = 1; k <= order; ++k)
    for (std::size_t j = 0; j < 4; ++j) s.coeff(k)[j] = Rational(static_cast<long>(k + j), 3);
  for (auto _ : state) benchmark::DoNotOptimize(compose_series(f, s));
}
BENCHMARK(BM_ComposeSeries)->Arg(4)->Arg(8)->Arg(16);

void BM_Classify(benchmark::State& state) {
  const auto sys = S({"x1*x2 - x3^2 + x1^3", "x4^2 - x1*x3 + x2^3"}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(classify(sys, {1, 0, 0, 0}));
}
BENCHMARK(BM_Classify);

void BM_Lift(benchmark::State& state) {
  const auto sys = S({"y - x^2"}, 2);
  const QVector u{1, 0}, w{2, 2};
  const auto cert = classify(sys, u);
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lift_second_jet(sys, cert, u, w, order));
}
BENCHMARK(BM_Lift)->Arg(8)->Arg(16)->Arg(32);

void BM_MembershipParabola(benchmark::State& state) {
  const FloatSystem sys(S({"y - x^2"}, 2));
  for (auto _ : state) benchmark::DoNotOptimize(t2_membership(sys, RVector{1, 0}, RVector{1, 2}));
}
BENCHMARK(BM_MembershipParabola)->Unit(benchmark::kMillisecond);

void BM_MembershipWhitney(benchmark::State& state) {
  const FloatSystem sys(S({"z^2 - x^3*y^3"}, 3));
  for (auto _ : state) benchmark::DoNotOptimize(t2_membership(sys, RVector{1, -1, 0}, RVector{3, 1, 0}));
}
BENCHMARK(BM_MembershipWhitney)->Unit(benchmark::kMillisecond);

void BM_NecessaryCheckCertified(benchmark::State& state) {
  const auto sys = S({"y - x^2"}, 2);
  const auto f = parse_polynomial("y", 2);
  for (auto _ : state) benchmark::DoNotOptimize(necessary_check(sys, f, {1, 0}));
}
BENCHMARK(BM_NecessaryCheckCertified);

} // namespace
} // namespace sot

BENCHMARK_MAIN();
