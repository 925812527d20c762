#pragma once
// Plain serial reference implementations of the heavy numerical kernels.
//
// Each function here computes the same quantity as its production
// counterpart through the most direct route available: simple nested loops
// around the public pointwise evaluators, with none of the production
// optimizations (no per-row quadratic hoisting, no sign-flip symmetry
// halving, no node windowing or early exits, no threading).  They exist so
// that
//   * tests can validate the optimized kernels against code whose
//     correctness is obvious by inspection, and
//   * the benchmark can measure what the optimizations and threading buy.
//
// Accumulation uses compensated (Kahan) summation in a single fixed order,
// so the values are deterministic; they agree with the production kernels
// to roundoff-accumulation level, not bit-for-bit (the production kernels
// reduce in a different, per-slab order and rearrange the per-node
// arithmetic).  Grid samplers, by contrast, are pure per-point maps, so the
// serial versions match the parallel ones exactly.

#include <complex>

#include "tmsv/grid.hpp"
#include "tmsv/params.hpp"
#include "tmsv/states.hpp"
#include "tmsv/wigner.hpp"

namespace tmsv::reference {

// Tensor-product Gauss-Legendre integrals of the Wigner function over a
// domain, all accumulated in one pass over the full node lattice.
struct WignerIntegrals {
  double integral = 0.0;         // plain integral of W
  double abs_integral = 0.0;     // integral of |W|
  double negative_volume = 0.0;  // max(0, (abs_integral - integral) / 2)
  double min_value = 0.0;        // extrema of W over the evaluated nodes
  double max_value = 0.0;
};

// Integrals over the 4D box [-half_width, half_width]^4 with an
// order-per-axis Gauss-Legendre rule.  Every node of the full order^4
// lattice is evaluated through wigner::wigner_tmsv.  No automatic policy:
// half_width and order must be positive (pass the half_width / order_used
// reported by wigner::negativity_volume to compare on identical nodes).
WignerIntegrals wigner_box_integrals(const SqueezeParams& params, int k,
                                     double half_width, int order);

// Integrals over the 2D rectangle of spec.grid with an order-per-axis rule
// (same node placement as the production slice integrator at that order).
WignerIntegrals wigner_slice_integrals(const SqueezeParams& params, int k,
                                       const wigner::WignerSliceSpec& spec, int order);

// Serial twin of wigner::slice_field: one flat loop over the grid calling
// wigner::wigner_tmsv per point.
Field2D<double> wigner_slice_field(const SqueezeParams& params, int k,
                                   const wigner::WignerSliceSpec& spec);

// Serial twin of states::evaluate_grid: one flat loop over the grid calling
// states::evaluate per point.
Field2D<std::complex<double>> wavefunction_grid(const states::PolyGauss& pg,
                                                const GridSpec& grid);

// Momentum marginal of the Wigner function at fixed (x, y): plain double
// loop over an order-per-axis Gauss-Legendre rule on
// [-half_width, half_width]^2.  Both parameters must be positive.
double position_marginal(const SqueezeParams& params, int k, double x, double y,
                         double half_width, int order);

}  // namespace tmsv::reference
