#pragma once
// Closed-form quadrature wavefunctions of the (photon-subtracted) two-mode
// squeezed vacuum, as polynomial-times-Gaussian objects.  The polynomial
// table is produced by exact symbolic differentiation, never finite
// differences.
#include <complex>
#include <vector>

#include "tmsv/grid.hpp"
#include "tmsv/params.hpp"

namespace tmsv::states {

using cplx = std::complex<double>;

// prefactor * P(x, y) * exp(G(x, y)) with the fixed exponent
//   G = [2xy*eta - (x^2+y^2)*eta^2] / (1 - eta^2) - (x^2+y^2)/2.
// P is a complex coefficient table c_{ij} x^i y^j, i + j <= degree, and
// degree equals the vorticity k of the state the object represents.
struct PolyGauss {
  SqueezeParams params;
  cplx eta;  // e^{i theta} tanh r, |eta| < 1
  cplx prefactor = 1.0;
  int degree = 0;
  int photons_removed = 0;  // k
  std::vector<cplx> coeff;  // (degree+1)^2 table, index i*(degree+1)+j for x^i y^j

  const cplx& c(int i, int j) const {
    return coeff[static_cast<std::size_t>(i) * (degree + 1) + static_cast<std::size_t>(j)];
  }
  cplx& c(int i, int j) {
    return coeff[static_cast<std::size_t>(i) * (degree + 1) + static_cast<std::size_t>(j)];
  }
  cplx poly_at(double x, double y) const;
  cplx exponent(double x, double y) const;  // G(x, y)
};

// Wavefunction of the squeezed vacuum itself: P = 1,
// prefactor = 1/sqrt((1 - eta^2) pi cosh^2 r), principal branch.
PolyGauss tmsv_wavefunction(const SqueezeParams& params);

// k-fold (x - d/dx) ladder applied to the squeezed-vacuum wavefunction,
// times e^{ik theta}/(2^{k/2} cosh r).  Unnormalized by design: this is the
// literal closed form; use normalized() for oracle comparisons.
PolyGauss subtracted_wavefunction(const SqueezeParams& params, int k);

cplx evaluate(const PolyGauss& pg, QuadraturePoint pt);

// L2 norm over the adaptive box [-L, L]^2, L = 5.5 sqrt(cosh 2r) + k
// (tail < 1e-13 for every supported parameter range).
double l2_norm(const PolyGauss& pg);

// Same object scaled to unit L2 norm.
PolyGauss normalized(const PolyGauss& pg);

struct IntensityPhase {
  Field2D<double> intensity;  // |psi|^2
  Field2D<double> phase;      // arg psi in (-pi, pi]
};

// Grid sampling (parallel over rows).
Field2D<cplx> evaluate_grid(const PolyGauss& pg, const GridSpec& grid);
IntensityPhase intensity_phase_grid(const PolyGauss& pg, const GridSpec& grid);

}  // namespace tmsv::states
