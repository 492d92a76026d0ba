#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sdss/frame.h"
#include "sdss/kernels.h"
#include "sdss/mcgp.h"
#include "sdss/pipeline.h"
#include "sdss/synth.h"
#include "sdss/temporal.h"

using namespace sdss;

namespace {

std::vector<kernels::Interval> make_ranges(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<kernels::Interval> out(n);
  for (auto &r : out) {
    double p = u(rng), q = u(rng);
    if (p > q) std::swap(p, q);
    r = {p, q};
  }
  return out;
}

std::vector<Tfn> make_cells(std::size_t n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Tfn> out(n);
  for (auto &t : out) {
    double v[3] = {u(rng), u(rng), u(rng)};
    std::sort(v, v + 3);
    t = {v[0], v[1], v[2]};
  }
  return out;
}

template <auto Fn>
void membership(benchmark::State &state) {
  const auto shapes = fuzzify_frame(0, 100, 9).shapes();
  const auto ranges = make_ranges(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(shapes, ranges));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void histogram(benchmark::State &state) {
  const auto s = triangular_series({0, 3, 10}, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(s, 0, 10, 64));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void overlap(benchmark::State &state) {
  const Tfn l{0, 2, 4}, r{2, 4, 6};
  for (auto _ : state) benchmark::DoNotOptimize(Fn(l, r, 2, 4, static_cast<std::size_t>(state.range(0))));
}

template <auto Fn>
void distances(benchmark::State &state) {
  const std::size_t attrs = 19;
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto cells = make_cells(rows * attrs);
  const std::vector<double> pis(attrs, 1.0), nis(attrs, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(cells, attrs, pis, nis, DistanceVariant::paper));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void pipeline(benchmark::State &state) {
  const auto ds = synthesize({.suppliers = static_cast<std::size_t>(state.range(0)), .seed = 4});
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(ds));
}

void sweep(benchmark::State &state) {
  const auto ds = synthesize({.suppliers = 8, .seed = 5});
  const auto tvps = tvp_range(0, ds.mcgp->model.quantity * 0.5, ds.mcgp->model.quantity / 200.0);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(tvp_sweep(ds.mcgp->model, tvps, {}, parallel));
}

}  // namespace

BENCHMARK(membership<kernels::serial::membership_matrix>)->Name("membership/serial")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(membership<kernels::omp::membership_matrix>)->Name("membership/omp")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(histogram<kernels::serial::histogram>)->Name("histogram/serial")->Arg(1 << 14)->Arg(1 << 20);
BENCHMARK(histogram<kernels::omp::histogram>)->Name("histogram/omp")->Arg(1 << 14)->Arg(1 << 20);
BENCHMARK(overlap<kernels::serial::overlap_integral>)->Name("overlap/serial")->Arg(4096)->Arg(1 << 20);
BENCHMARK(overlap<kernels::omp::overlap_integral>)->Name("overlap/omp")->Arg(4096)->Arg(1 << 20);
BENCHMARK(distances<kernels::serial::ideal_distances>)->Name("distances/serial")->Arg(64)->Arg(1 << 14);
BENCHMARK(distances<kernels::omp::ideal_distances>)->Name("distances/omp")->Arg(64)->Arg(1 << 14);
BENCHMARK(pipeline)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
