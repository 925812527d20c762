#pragma once
// Two-mode Wigner functions for the photon-subtracted two-mode squeezed
// vacuum, phase-space slice fields, negativity-volume metrics, and a
// Fock-sum cross-Wigner oracle for validation.
//
// Conventions: a phase-space point carries quadratures (x, p_x) for the
// signal mode and (y, p_y) for the idler mode, combined into the coherent
// labels alpha = x - i p_x and beta = y - i p_y.  With this scaling the
// k-subtracted state's Wigner function is
//   W(alpha, beta) = (4/pi^2) (-1)^k L_k(4|at|^2) exp(-2(|at|^2 + |bt|^2)),
// where (at, bt) is the inverse two-mode squeeze acting on (alpha, beta).
// The position density is recovered as
//   integral of W over (p_x, p_y) = 2 |Psi(sqrt(2) x, sqrt(2) y)|^2
// for the unit-norm wavefunction Psi of the same state.

#include <complex>
#include <utility>

#include "tmsv/fock.hpp"
#include "tmsv/grid.hpp"
#include "tmsv/params.hpp"

namespace tmsv::wigner {

using cplx = std::complex<double>;

// Momentum quadratures of the two modes.
struct MomentumPair {
  double p_x = 0.0;
  double p_y = 0.0;
};

// Full two-mode phase-space point; coherent labels are derived on the fly
// (never stored) so the components stay the single source of truth.
struct PhaseSpacePoint4 {
  QuadraturePoint q{};
  MomentumPair p{};

  cplx alpha() const { return cplx(q.x, -p.p_x); }
  cplx beta() const { return cplx(q.y, -p.p_y); }
};

// Phase-space action of the inverse two-mode squeeze.
struct SqueezeMap {
  double r = 0.0;
  double theta = 0.0;

  SqueezeMap() = default;
  explicit SqueezeMap(const SqueezeParams& sp) : r(sp.r), theta(sp.theta) {}
};

// Which pair of quadratures a 2D slice varies; the complementary pair is
// held fixed.  Canonical coordinate order is (x, p_x, y, p_y).
enum class SlicePlane { xy, px_py, x_px, y_py, x_py, y_px };

// A 2D section of the 4D Wigner function.  `fixed1`/`fixed2` are the values
// of the two complementary quadratures, listed in canonical order:
//   xy    -> fixed (p_x, p_y)     px_py -> fixed (x, y)
//   x_px  -> fixed (y, p_y)       y_py  -> fixed (x, p_x)
//   x_py  -> fixed (p_x, y)       y_px  -> fixed (x, p_y)
// The grid's first axis is the first-named quadrature of the plane.
struct WignerSliceSpec {
  SlicePlane plane = SlicePlane::xy;
  double fixed1 = 0.0;
  double fixed2 = 0.0;
  GridSpec grid{};
};

// Result of a negativity-volume integration.  `negative_volume` is
// delta = integral of (|W| - W)/2; `normalization` is the plain integral of
// W over the same domain.  `quadrature_error` is the change in
// `negative_volume` when the quadrature order is doubled; `converged` means
// that change stayed within 1e-4.  Fringe statistics always refer to a 2D
// slice: the integrated slice itself for slice domains, or a central
// x--p_y section for 4D box domains.
struct NegativityReport {
  double negative_volume = 0.0;
  double total_abs_volume = 0.0;
  double normalization = 0.0;
  int fringe_count = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  double quadrature_error = 0.0;
  double normalization_error = 0.0;
  bool converged = false;
  int order_used = 0;
  double half_width = 0.0;
};

// 4D integration domain [-half_width, half_width]^4 with tensor-product
// Gauss-Legendre of the given order per axis.  Non-positive entries select
// automatic values derived from r (box wide enough that the Gaussian
// envelope tail is below 1e-8, order scaled to resolve the narrowest
// axis-aligned section).
struct Box4DSpec {
  double half_width = 0.0;
  int order = 0;
};

// Single-mode Fock-state Wigner function:
//   (2/pi) (-1)^n L_n(4|alpha|^2) exp(-2|alpha|^2).
double wigner_fock_single(int n, cplx alpha);

// Cross-Wigner kernel between Fock states |m> and |n| of one mode; for
// m >= n it equals
//   (2/pi) (-1)^n sqrt(n!/m!) (2 conj(alpha))^{m-n} L_n^{(m-n)}(4|alpha|^2)
//     * exp(-2|alpha|^2),
// and for m < n the conjugate.  Diagonal (m == n) reduces to
// wigner_fock_single.
cplx wigner_fock_cross(int m, int n, cplx alpha);

// Inverse-squeeze phase-space map:
//   at = cosh(r) alpha - sinh(r) e^{i theta} conj(beta)
//   bt = cosh(r) beta  - sinh(r) e^{i theta} conj(alpha)
// Satisfies |at|^2 - |bt|^2 = |alpha|^2 - |beta|^2 exactly and reduces to
// the identity at r = 0.
std::pair<cplx, cplx> squeeze_map(const SqueezeMap& map, const PhaseSpacePoint4& pt);

// Wigner function of the k-photon-subtracted two-mode squeezed vacuum at a
// phase-space point (k = 0 is the Gaussian squeezed vacuum itself).
double wigner_tmsv(const SqueezeParams& params, int k, const PhaseSpacePoint4& pt);

// Embed 2D slice coordinates (u, v) into a full 4D point per the spec's
// plane and fixed values.
PhaseSpacePoint4 slice_point(const WignerSliceSpec& spec, double u, double v);

// Sample wigner_tmsv over the slice's grid (parallel over rows).
Field2D<double> slice_field(const SqueezeParams& params, int k, const WignerSliceSpec& spec);

// Momentum marginal: integral of W over (p_x, p_y) at fixed (x, y).
// order <= 0 selects an automatic Gauss-Legendre order from r.
double position_marginal(const SqueezeParams& params, int k, double x, double y,
                         int order = 0);

// Negativity volume over a 4D box (automatic box by default).  Runs the
// tensor quadrature at the base order and at twice that order; reports the
// doubled-order values plus the observed change.
NegativityReport negativity_volume(const SqueezeParams& params, int k,
                                   const Box4DSpec& box = {});

// Negativity volume over a 2D slice domain (the rectangle of spec.grid).
// Quadrature uses Gauss-Legendre of `order` per axis (automatic when <= 0);
// fringe statistics come from the sampled grid itself.
NegativityReport negativity_volume_slice(const SqueezeParams& params, int k,
                                         const WignerSliceSpec& spec, int order = 0);

// Number of 4-connected components of the region field < threshold.
// threshold must be <= 0 (small negative masks rounding noise).
int fringe_count(const Field2D<double>& field, double threshold = -1e-9);

// Numeric Wigner oracle from a truncated Fock expansion (state must be
// normalized): bilinear sum of cross-Wigner kernels over both modes.
// Asserts the imaginary residue is tiny; residues above 1e-8 throw.
double wigner_numeric_oracle(const fock::FockState2& state, const PhaseSpacePoint4& pt);

}  // namespace tmsv::wigner
