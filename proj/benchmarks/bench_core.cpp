#include <benchmark/benchmark.h>

#include "lefschetz/ehrhart.hpp"
#include "lefschetz/gf2.hpp"
#include "lefschetz/gfp.hpp"
#include "lefschetz/identity.hpp"
#include "lefschetz/lefschetz.hpp"

using namespace lefschetz;

namespace {

Polytope cube(std::int64_t lo, std::int64_t hi) {
  std::vector<Point> v;
  for (int m = 0; m < 8; ++m) v.push_back({m & 1 ? hi : lo, m & 2 ? hi : lo, m & 4 ? hi : lo});
  return Polytope::from_points(v, "cube");
}

Polytope dilated_triangle(std::int64_t n) { return Polytope::from_points({{0, 0}, {n, 0}, {0, n}}, "triangle"); }

template <class F>
void BM_FieldMul(benchmark::State& state) {
  RandomStream rng(1);
  F a = F::random(rng), b = F::random(rng);
  for (auto _ : state) {
    a = a * b + b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul<GF2_32>);
BENCHMARK(BM_FieldMul<GF2_64>);
BENCHMARK(BM_FieldMul<GF2_128>);
BENCHMARK(BM_FieldMul<GFp<3, 32>>);

template <class F>
void BM_FieldInv(benchmark::State& state) {
  RandomStream rng(2);
  F a = F::random(rng);
  for (auto _ : state) {
    a = a.inv() + F::one();
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldInv<GF2_64>);
BENCHMARK(BM_FieldInv<GFp<3, 32>>);

void BM_Hstar(benchmark::State& state) {
  const auto P = cube(-state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hstar(P));
}
BENCHMARK(BM_Hstar)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

// Reduction of the top module piece: the elimination that dominates every check.
void BM_GradedPiece(benchmark::State& state) {
  const auto X = LatticeComplex::from_polytope(dilated_triangle(state.range(0)));
  RandomStream rng(3);
  const auto th = generic_theta<GF2_64>(X, rng);
  (void)X.layer(3);
  for (auto _ : state) {
    const GradedPiece<GF2_64> piece(X, Space::Module, th, 3);
    benchmark::DoNotOptimize(piece.dim());
  }
  state.counters["monomials"] = (double)X.layer(3).size();
}
BENCHMARK(BM_GradedPiece)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_SolveVolume(benchmark::State& state) {
  const auto X = LatticeComplex::from_polytope(cube(-1, 1));
  RandomStream rng(4);
  const auto th = generic_theta<GF2_64>(X, rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_volume(X, th).values.size());
}
BENCHMARK(BM_SolveVolume)->Unit(benchmark::kMillisecond);

void BM_ParsevalGrouped(benchmark::State& state) {
  const auto X = LatticeComplex::from_polytope(dilated_triangle(state.range(0)));
  RandomStream rng(5);
  const auto th = generic_theta<GF2_64>(X, rng);
  const auto vf = solve_volume(X, th);
  const MonomialBasis B0(X, Space::Ring, 0);
  std::vector<Point> interior;
  for (const auto& e : X.layer(3).elements)
    if (!e.in_subcomplex) interior.push_back(e.point);
  for (auto _ : state)
    benchmark::DoNotOptimize(parseval_sums(X, th, vf, ConePoint{interior.front(), 3}, B0, std::vector<GF2_64>{GF2_64::one()}, false).grouped);
}
BENCHMARK(BM_ParsevalGrouped)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RelativeLefschetz(benchmark::State& state) {
  const auto X = LatticeComplex::from_polytope(cube(-1, 1));
  RandomStream rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(check_relative_lefschetz<GF2_64>(X, state.range(0), std::nullopt, rng).rank);
}
BENCHMARK(BM_RelativeLefschetz)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_DifferentialJet(benchmark::State& state) {
  const auto X = LatticeComplex::from_polytope(dilated_triangle(2));
  RandomStream rng(7);
  const auto th = generic_theta<GF2_64>(X, rng);
  const auto cases = differential_instances<GF2_64>(X, 1, rng);
  const auto flag = default_flag(X);
  for (auto _ : state) {
    const auto& c = cases.front();
    benchmark::DoNotOptimize(check_differential(X, th, flag, c.Fseq, c.sigma, c.G, c.u).pass);
  }
}
BENCHMARK(BM_DifferentialJet)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
