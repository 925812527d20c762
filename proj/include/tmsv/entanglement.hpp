#pragma once
// Entanglement measures of the photon-subtracted squeezed-vacuum family,
// computed from Schmidt-band coefficient sequences c_m over |m+k, m>.
//
// Two coefficient conventions coexist deliberately:
//   * paper_literal:    c_m = tanh^m r * sqrt(m+k) / cosh^2 r   (k >= 1)
//                       c_m = tanh^m r / cosh r                 (k = 0)
//   * operator_derived: c_m = tanh^m r * sqrt((m+k)!/m!)  (no prefactor;
//                       normalization constant^2 = k!/(1-tanh^2 r)^{k+1})
// They are proportional only for k <= 1.  Every consumer states which one it
// uses; measures depend on coefficient magnitudes only.
#include <cstddef>
#include <vector>

#include "tmsv/errors.hpp"
#include "tmsv/fock.hpp"
#include "tmsv/params.hpp"

namespace tmsv::entanglement {

enum class MeasureKind {
  log_negativity,                // log2((sum_m c_m)^2): standard pure-state result
  log_negativity_paper_literal,  // log2((sum_m c_m^2)^2): degenerate (0) on normalized input
  negativity_ratio,              // ratio curve; see negativity_ratio() for the convention
  ef_paper,                      // truncated formation product; see ef_paper()
  entropy_normalized,            // von Neumann entropy of the reduced state
};

enum class Amplitudes { paper_literal, operator_derived };

struct CoefficientSource {
  Amplitudes amplitudes = Amplitudes::paper_literal;
  bool normalize = true;
};

struct EntanglementCurve {
  std::vector<double> r_values;  // strictly increasing, positive
  std::vector<double> values;    // same length
  int k = 0;
  MeasureKind measure = MeasureKind::log_negativity;
  CoefficientSource source{};
};

enum class NegativityFormula {
  summed_amplitude,  // log2((sum c)^2); requires normalized coefficients
  paper_literal,     // log2((sum c^2)^2): the literal squared-amplitude form
};

// Both columns of the ratio curve.
struct RatioReport {
  // (sum_m c_m e^{-r})^2 with the source's amplitudes scaled by the exact
  // subtracted-state normalization sqrt(k!/(1-tanh^2 r)^{k+1}).  For
  // operator_derived amplitudes this is the honest ratio of the
  // (1 + 2N) log-negativity arguments of the vortex state and the two-mode
  // squeezed vacuum; for paper_literal amplitudes its r -> 0 limit is
  // 1/(k-1)! (1, 1, 0.5, 0.1667 for k = 1..4), which is where the k = 3
  // and k = 4 curves start (0.5 and ~0.17).
  double literal_argument_ratio = 0.0;
  // eps_k / eps_tmsv with both log negativities computed by summed_amplitude
  // on the source's normalized coefficients.
  double log_ratio = 0.0;
};

struct FormationTailBounds {
  double coefficient_sum = 0.0;  // increase of sum c_m if the cutoff were lifted
  double entropy_sum = 0.0;      // increase of -sum c^2 log2 c^2 likewise
};

struct ArgmaxResult {
  double r = 0.0;
  double value = 0.0;
};

// Truncation used by ef_paper unless the caller overrides it.  The literal
// formation product has no interior maximum when summed to convergence (the
// amplitude sum grows without bound in r), so the truncation depth is part of
// the curve's definition; 80 places the k=1 maximum at r = 2.11.
inline constexpr int kFormationDefaultCutoff = 80;

// Smallest cutoff N whose dropped tail of sum c_m^2 is below `tol` relative
// to the total, for the given amplitude convention.
int suggest_coefficient_cutoff(double r, int k, Amplitudes amplitudes, double tol = 1e-12);

// Schmidt-band coefficients per `source`, truncated at `cutoff` (inclusive).
// Throws numerical_error if the dropped relative tail of sum c^2 exceeds
// 1e-12; invalid_argument on negative k or cutoff.
fock::SchmidtState coefficients(const SqueezeParams& params, int k, const CoefficientSource& source,
                                int cutoff);

// Log negativity of a Schmidt-form pure state.  summed_amplitude requires
// normalized coefficients; paper_literal accepts either.  Throws
// invalid_argument on an empty coefficient list or unnormalized input to
// summed_amplitude.
double log_negativity(const fock::SchmidtState& s, NegativityFormula formula);

// Primary ratio value (the literal_argument_ratio column).  r must be > 0.
double negativity_ratio(const SqueezeParams& params, int k, const CoefficientSource& source);
RatioReport negativity_ratio_report(const SqueezeParams& params, int k,
                                    const CoefficientSource& source);

// S = -sum c_m^2 log2 c_m^2.  Requires normalized input (flag and unit sum).
double entanglement_entropy(const fock::SchmidtState& s);

// The literal formation product (sum_n c_n)(sum_m c_m)(-sum_p c_p^2 log2 c_p^2)
// over the UNNORMALIZED paper_literal coefficients, truncated at `cutoff`.
// The truncation is part of the definition (see kFormationDefaultCutoff).
double ef_paper(const SqueezeParams& params, int k, int cutoff = kFormationDefaultCutoff);

// How much the two truncated sums inside ef_paper would still grow if the
// cutoff were lifted; reported alongside curve artifacts.
FormationTailBounds ef_paper_tail_bounds(const SqueezeParams& params, int k, int cutoff);

// Evaluate `measure` on every r of `r_grid` (strictly increasing, positive).
// Deterministic output ordering regardless of thread count; a per-point
// failure is rethrown as numerical_error naming the offending r.
EntanglementCurve scan(MeasureKind measure, const SqueezeParams& params_template, int k,
                       const std::vector<double>& r_grid, const CoefficientSource& source);

// Index of the maximum value (first index on ties).  Throws on empty curve.
std::size_t argmax_index(const EntanglementCurve& curve);

// Coarse grid search over [r_lo, r_hi] at `step`, then a second search on a
// step/refine_factor grid spanning one coarse step around the winner.
ArgmaxResult refined_argmax(MeasureKind measure, const SqueezeParams& params_template, int k,
                            double r_lo, double r_hi, double step, int refine_factor,
                            const CoefficientSource& source);

}  // namespace tmsv::entanglement
