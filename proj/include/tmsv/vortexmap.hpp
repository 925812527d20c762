#pragma once
// Phase-singularity detection and topological charge on complex 2D fields.
// Detection is plaquette winding: the wrapped phase circulation around each
// elementary grid cell, built from shared edge arrays so the cell sum
// telescopes exactly to the boundary winding.
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "tmsv/errors.hpp"
#include "tmsv/grid.hpp"
#include "tmsv/params.hpp"
#include "tmsv/states.hpp"

namespace tmsv::vortexmap {

struct Singularity {
  QuadraturePoint location;  // cell-center estimate
  int charge = 0;            // nonzero by construction
};

struct ChargeResult {
  std::vector<Singularity> singularities;
  int total_charge = 0;     // sum of individual charges
  int boundary_charge = 0;  // winding along the outer grid contour
  bool non_vortex_zero_manifold = false;  // real-eta degenerate family: zero set is a line
  int refinements = 0;      // x2 grid doublings the adaptive driver used
  GridSpec final_grid;      // lattice the reported result was computed on
};

// Winding number of a closed sample sequence (last connects back to first):
// (1/2pi) * sum of wrapped phase differences.  Rejects samples with
// |value| <= 1e-14 ("perturb the contour") and non-integer totals.
int winding_number(const std::vector<std::complex<double>>& samples);

// Same, reading samples off a lattice field along a closed index contour.
int winding_number(const Field2D<std::complex<double>>& field,
                   const std::vector<std::pair<std::size_t, std::size_t>>& loop);

// Per-plaquette winding sweep with adaptive x2 refinement (max 4 doublings)
// until the singularity set is stable.  Counterclockwise circulation in the
// (x, y) plane counts positive.
ChargeResult locate_singularities(const states::PolyGauss& pg, const GridSpec& grid);

// Radius guaranteed (by a sampled leading-form bound) to enclose every zero
// of the polynomial factor.
double zero_bound_radius(const states::PolyGauss& pg);

// Boundary winding on a circle of the given radius (auto zero-bound radius if
// radius <= 0); equals the signed total vorticity of the state.
int total_charge(const states::PolyGauss& pg, double radius = 0.0, int samples = 4096);

}  // namespace tmsv::vortexmap
