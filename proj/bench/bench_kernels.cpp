// Parallel kernels against their serial reference implementations.

#include "sph/harmonic.hpp"
#include "sph/involution.hpp"
#include "sph/spherical.hpp"

#include <benchmark/benchmark.h>

using namespace sph;

namespace {

void project(benchmark::State& state, bool parallel) {
  const auto q = QuadratureScheme::su2(12);
  const C2Poly f = random_c2poly(6, 1);
  for (auto _ : state) {
    for (int d = 0; d <= 6; ++d) benchmark::DoNotOptimize(parallel ? project_su2(f, d, q) : project_su2_serial(f, d, q));
  }
}

void projectors(benchmark::State& state, bool parallel) {
  const auto q = QuadratureScheme::su2(12);
  for (auto _ : state) benchmark::DoNotOptimize(parallel ? projector_matrices(q, 6) : projector_matrices_serial(q, 6));
}

void sampler(benchmark::State& state, bool parallel) {
  const SubalgebraSpec h = named_subalgebra(LieAlgebra::make("G2"), "borel");
  for (auto _ : state) benchmark::DoNotOptimize(parallel ? is_spherical_pair(h, 8, 0) : is_spherical_pair_serial(h, 8, 0));
}

void orbit(benchmark::State& state, bool parallel) {
  auto g = LieAlgebra::make("A2");
  const SubalgebraSpec h = named_subalgebra(g, "full");
  const BundleCertificate c = assemble_bundle_involution(h, parse_hmodule(h, "defining"));
  const auto family = phi_family(c, 5);
  const auto pts = random_model_points(*g, c.module.dim, 64, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? orbit_preservation_check(family, c.nu, pts) : orbit_preservation_check_serial(family, c.nu, pts));
}

}  // namespace

BENCHMARK_CAPTURE(project, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(project, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(projectors, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(projectors, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sampler, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sampler, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(orbit, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(orbit, serial, false)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
