#include <benchmark/benchmark.h>

#include "foeed/masks.hpp"
#include "foeed/solver.hpp"
#include "foeed/synth.hpp"

namespace {

const foeed::ImageGrid& test_image(int size) {
  static foeed::ImageGrid img = foeed::make_test_image(foeed::SynthSpec::standard(128));
  if (img.width() != size) img = foeed::make_test_image(foeed::SynthSpec::standard(size));
  return img;
}

void BM_Rhs(benchmark::State& state) {
  const auto model = foeed::kAllModels[state.range(0)];
  const auto& u = test_image(static_cast<int>(state.range(1)));
  const auto cfg = foeed::SolverConfig::for_model(model);
  for (auto _ : state) benchmark::DoNotOptimize(foeed::rhs(u, cfg));
  state.SetLabel(std::string(foeed::to_string(model)));
  state.SetItemsProcessed(state.iterations() * u.width() * u.height());
}
BENCHMARK(BM_Rhs)->ArgsProduct({{0, 1, 2, 3, 4, 5}, {128, 256}})->Unit(benchmark::kMillisecond);

void BM_FsiCycle(benchmark::State& state) {
  const auto model = foeed::kAllModels[state.range(0)];
  const auto& f = test_image(128);
  const auto mask = foeed::random_mask(f.width(), f.height(), 0.1, 1);
  const auto cfg = foeed::SolverConfig::for_model(model);
  const auto u = foeed::initialize(f, mask, foeed::InitStrategy::Mean);
  for (auto _ : state) benchmark::DoNotOptimize(foeed::fsi_cycle(u, f, mask, cfg));
  state.SetLabel(std::string(foeed::to_string(model)));
}
BENCHMARK(BM_FsiCycle)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
