#include <benchmark/benchmark.h>

#include "zinv/algebra.hpp"
#include "zinv/charts.hpp"
#include "zinv/diagram.hpp"
#include "zinv/faces.hpp"
#include "zinv/labelled.hpp"
#include "zinv/linking.hpp"
#include "zinv/quat.hpp"
#include "zinv/rng.hpp"

using namespace zinv;

static void BM_canonical_k4(benchmark::State& state) {
  Graph g = k4_graph();
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_canonical_k4);

static void BM_count_aut_ladder(benchmark::State& state) {
  Graph g = ladder_graph();
  for (auto _ : state) benchmark::DoNotOptimize(count_automorphisms(g));
}
BENCHMARK(BM_count_aut_ladder);

static void BM_oriented_key_theta(benchmark::State& state) {
  OrientedGraph og = default_oriented(theta_graph());
  for (auto _ : state) benchmark::DoNotOptimize(oriented_key(og));
}
BENCHMARK(BM_oriented_key_theta);

static void BM_reduce_random(benchmark::State& state) {
  Rng rng(99);
  AlgebraElement x = random_element(rng, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(x));
}
BENCHMARK(BM_reduce_random);

static void BM_enumerate_labelled_1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_labelled(1));
}
BENCHMARK(BM_enumerate_labelled_1);

static void BM_classify_face(benchmark::State& state) {
  Labelled g = enumerate_labelled(1).front();
  FaceDescriptor f = enumerate_faces({1, 2}, Ambient::CV).front();
  for (auto _ : state) benchmark::DoNotOptimize(classify_face(g, f));
}
BENCHMARK(BM_classify_face);

static void BM_chart_roundtrip_finite(benchmark::State& state) {
  Rng rng(7);
  FiniteSample s = sample_finite_instance(rng, 5, 3, false);
  for (auto _ : state) {
    ConfigPoint q = chart_xi(s.point, s.tree);
    benchmark::DoNotOptimize(retraction_r(q, s.tree));
  }
}
BENCHMARK(BM_chart_roundtrip_finite);

static void BM_gauss_linking_hopf(benchmark::State& state) {
  auto [k1, k2] = hopf_pair();
  for (auto _ : state)
    benchmark::DoNotOptimize(gauss_linking(k1, k2, state.range(0)));
}
BENCHMARK(BM_gauss_linking_hopf)->Arg(32)->Arg(64);

static void BM_rho(benchmark::State& state) {
  Rng rng(5);
  Quat q = random_unit_quat(rng);
  for (auto _ : state) benchmark::DoNotOptimize(rho(q));
}
BENCHMARK(BM_rho);

BENCHMARK_MAIN();
