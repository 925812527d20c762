#pragma once
// Truncated two-mode Fock engine.  Brute-force but exact within the cutoff;
// every closed form elsewhere in the library is validated against it.
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "tmsv/errors.hpp"
#include "tmsv/params.hpp"

namespace tmsv::fock {

enum class Mode { a, b };
enum class Ladder { create, annihilate };

struct FockState2 {
  int cutoff = 0;  // max photon number per mode, inclusive
  std::vector<std::complex<double>> amp;  // (cutoff+1)^2, index n_a*(cutoff+1)+n_b
  double tail_bound = 0.0;  // upper bound on probability discarded by truncation
  bool flagged_zero = false;  // an operation produced the zero vector

  FockState2() = default;
  explicit FockState2(int cutoff_);

  std::complex<double>& at(int n_a, int n_b) {
    return amp[static_cast<std::size_t>(n_a) * (cutoff + 1) + static_cast<std::size_t>(n_b)];
  }
  const std::complex<double>& at(int n_a, int n_b) const {
    return amp[static_cast<std::size_t>(n_a) * (cutoff + 1) + static_cast<std::size_t>(n_b)];
  }
  double norm2() const;
  FockState2 normalized() const;  // throws numerical_error on (near-)zero norm
};

// Schmidt data of a band-supported state: |psi> = sum_m c_m e^{i m ramp_theta} |m+k, m>
// up to a stripped global phase.  Coefficients are non-negative magnitudes.
struct SchmidtState {
  int k = 0;
  std::vector<double> coefficients;
  double ramp_theta = 0.0;  // phase increment per m (metadata; measures use |c| only)
  bool normalized = false;
};

struct HeraldConfig {
  double transmittance = 0.99;  // per stage, in (0, 1]
  int stages = 1;
  int ancilla_cutoff = 1;  // validated >= 1; inert under ideal |1>-projection (map is exact)
};

// Smallest N with tanh^{2(N+1)}(r) * (N+k)^k < tol; the (N+k)^k factor leaves
// headroom for k subsequent creation operators.
int suggest_cutoff(double r, int k, double tol);

// Two-mode squeezed vacuum: amplitude e^{i n theta} tanh^n r / cosh r on |n,n>.
// tail_bound = tanh^{2(N+1)} r (exact discarded mass).  Rejects cutoffs with
// tail_bound > 1e-6.
FockState2 tmsv(const SqueezeParams& params, int cutoff);

// Apply (a or b)^(dagger or not) `count` times.  Output is NOT normalized.
// Creation errors when the mass pushed past the cutoff exceeds
// max(1e-12, 10 * input tail_bound); annihilating vacuum flags the zero vector.
FockState2 apply_ladder(const FockState2& state, Mode mode, Ladder kind, int count);

// Beam-splitter photon subtraction heralded by an ideal single-photon click
// on the ancilla, repeated `stages` times.  Returns the conditioned state and
// the cumulative heralding probability.  Zero-probability outcomes (vacuum
// input, transmittance 1) return a flagged empty state, not an error.
std::pair<FockState2, double> herald_subtract(const FockState2& state, const HeraldConfig& config);

// Read the Schmidt decomposition off a single-band state (n_a - n_b = k >= 0).
// Rejects states with >= 1e-10 relative mass off every single band.
SchmidtState schmidt_coefficients(const FockState2& state);

// |<x|y>|^2 for normalized states with equal cutoffs.
double fidelity(const FockState2& x, const FockState2& y);

// Quadrature wavefunction sum_{n_a,n_b} amp(n_a,n_b) phi_{n_a}(x) phi_{n_b}(y).
std::complex<double> wavefunction_from_fock(const FockState2& state, double x, double y);

}  // namespace tmsv::fock
