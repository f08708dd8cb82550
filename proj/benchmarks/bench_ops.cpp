#include <benchmark/benchmark.h>

#include "hyperdist/laws.hpp"
#include "hyperdist/refinement.hpp"
#include "hyperdist/render.hpp"

using namespace hyperdist;

namespace {

Space letters(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  return Space::named("X", std::move(labels));
}

Dist full_support_dist(laws::Rng& rng, const Space& A);

void HyperNormalise(benchmark::State& state) {
  laws::Rng rng(7);
  Dist omega =
      full_support_dist(rng, Space::copower(4, letters(static_cast<std::size_t>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(hyper_normalise(omega));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(HyperNormalise)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void KleisliCompose(benchmark::State& state) {
  laws::Rng rng(11);
  Space A = letters(static_cast<std::size_t>(state.range(0)));
  Channel f = laws::random_channel(rng, A, A, 16);
  Channel g = laws::random_channel(rng, A, A, 16);
  for (auto _ : state) benchmark::DoNotOptimize(kleisli_compose(g, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(KleisliCompose)->RangeMultiplier(2)->Range(4, 32)->Complexity();

Dist full_support_dist(laws::Rng& rng, const Space& A) {
  std::size_t k = A.cardinality();
  std::vector<std::size_t> units(k, 1);
  for (std::size_t u = 0; u < k; ++u) units[rng.below(k)]++;
  std::vector<MassEntry> mass;
  auto elems = A.elements();
  for (std::size_t i = 0; i < k; ++i)
    mass.emplace_back(elems[i], q_of(static_cast<long>(units[i]), static_cast<long>(2 * k)));
  return Dist(A, std::move(mass));
}

void Disintegrate(benchmark::State& state) {
  laws::Rng rng(13);
  Space A = letters(static_cast<std::size_t>(state.range(0)));
  Dist omega = full_support_dist(rng, A);
  Channel t = laws::random_channel(rng, A, Space::numeric(4), 16);
  Dist joint = joint_from_conditional(t, omega);
  for (auto _ : state) benchmark::DoNotOptimize(disintegrate(joint));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(Disintegrate)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void TestRefinesFeasibility(benchmark::State& state) {
  laws::Rng rng(17);
  std::size_t n = static_cast<std::size_t>(state.range(0));
  Space A = letters(4);
  Channel s = laws::random_channel(rng, A, Space::numeric(n), 8);
  Channel h = laws::random_channel(rng, Space::numeric(n), Space::numeric(n), 8);
  Channel t = kleisli_compose(h, s);
  for (auto _ : state) benchmark::DoNotOptimize(test_refines(s, t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(TestRefinesFeasibility)->DenseRange(2, 8, 2)->Complexity();

void KetRoundTrip(benchmark::State& state) {
  laws::Rng rng(23);
  Dist omega = full_support_dist(rng, Space::copower(static_cast<std::size_t>(state.range(0)),
                                                     letters(8)));
  Dist hyper = hyper_normalise(omega);
  for (auto _ : state) {
    std::string text = render_ket(hyper);
    benchmark::DoNotOptimize(parse_ket(text, hyper.space()));
  }
}
BENCHMARK(KetRoundTrip)->DenseRange(2, 8, 2);

}  // namespace

BENCHMARK_MAIN();
