// Wall-clock comparison of the optimized (threaded) kernels against the
// naive serial reference implementations.  Two effects are measured:
//   * pure threading on per-point samplers (identical arithmetic per point),
//   * algorithmic gains in the integrators (per-row quadratic hoisting,
//     sign-flip symmetry halving, node windowing) on top of threading.
// Run on a single-core host this therefore shows parity for the samplers
// and the pure algorithmic factor for the integrators.

#if defined(_OPENMP)
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <numbers>

#include "tmsv/reference.hpp"
#include "tmsv/states.hpp"
#include "tmsv/wigner.hpp"

using namespace tmsv;

namespace {

// Best of three runs, milliseconds.
template <class F>
double time_ms(F&& fn) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

volatile double g_sink = 0.0;  // keep results observable

void row(const char* name, const char* detail, double serial_ms, double optimized_ms) {
  std::printf("%-34s %-38s %10.1f %10.1f %8.2fx\n", name, detail, serial_ms, optimized_ms,
              serial_ms / optimized_ms);
}

}  // namespace

int main() {
#if defined(_OPENMP)
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled (serial build)\n\n");
#endif
  std::printf("%-34s %-38s %10s %10s %9s\n", "kernel", "configuration", "naive ms",
              "optimized", "speedup");
  std::printf("%-34s %-38s %10s %10s %9s\n", "------", "-------------", "--------",
              "---------", "-------");

  const SqueezeParams p(0.9, std::numbers::pi / 2.0);

  {
    const int k = 2;
    wigner::NegativityReport rep;
    const double opt =
        time_ms([&] { rep = wigner::negativity_volume(p, k, wigner::Box4DSpec{0.0, 28}); });
    const double ser = time_ms([&] {
      g_sink = reference::wigner_box_integrals(p, k, rep.half_width, rep.order_used)
                   .negative_volume;
    });
    row("4D negativity volume", "k=2 r=0.9, 56^4 nodes", ser, opt);
  }

  {
    const int k = 4;
    const SqueezeParams ps(2.1, std::numbers::pi / 2.0);
    wigner::WignerSliceSpec spec;
    spec.plane = wigner::SlicePlane::x_py;
    spec.grid = GridSpec{-14.0, 14.0, 401, -14.0, 14.0, 401};
    wigner::NegativityReport rep;
    const double opt =
        time_ms([&] { rep = wigner::negativity_volume_slice(ps, k, spec, 400); });
    const double ser = time_ms([&] {
      g_sink =
          reference::wigner_slice_integrals(ps, k, spec, rep.order_used).negative_volume;
    });
    row("2D slice negativity", "k=4 r=2.1, 800^2 nodes + field", ser, opt);
  }

  {
    const int k = 4;
    const SqueezeParams ps(2.1, std::numbers::pi / 2.0);
    wigner::WignerSliceSpec spec;
    spec.plane = wigner::SlicePlane::x_py;
    spec.grid = GridSpec{-10.0, 10.0, 801, -10.0, 10.0, 801};
    const double opt = time_ms([&] { g_sink = wigner::slice_field(ps, k, spec).value[0]; });
    const double ser =
        time_ms([&] { g_sink = reference::wigner_slice_field(ps, k, spec).value[0]; });
    row("Wigner slice sampler", "k=4 r=2.1, 801^2 points", ser, opt);
  }

  {
    const states::PolyGauss pg = states::subtracted_wavefunction(p, 3);
    const GridSpec grid{-4.0, 4.0, 801, -4.0, 4.0, 801};
    const double opt = time_ms([&] { g_sink = states::evaluate_grid(pg, grid).value[0].real(); });
    const double ser =
        time_ms([&] { g_sink = reference::wavefunction_grid(pg, grid).value[0].real(); });
    row("wavefunction sampler", "k=3 r=0.9, 801^2 points", ser, opt);
  }

  {
    const int k = 2;
    const double opt = time_ms([&] { g_sink = wigner::position_marginal(p, k, 0.4, -0.2); });
    const double ser =
        time_ms([&] { g_sink = reference::position_marginal(p, k, 0.4, -0.2, 7.0, 160); });
    row("momentum marginal", "k=2 r=0.9, 160^2 vs auto nodes", ser, opt);
  }

  std::printf(
      "\nThe wavefunction sampler shares its per-point code with the serial\n"
      "reference, so its ratio is the threading factor alone.  The other rows\n"
      "also include algebraic gains (hoisted squeeze-map coefficients, per-row\n"
      "quadratics, sign-flip symmetry halving, node windowing).\n");
  return 0;
}
