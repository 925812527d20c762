#include "tmsv/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "tmsv/specfun.hpp"

namespace tmsv::fock {

FockState2::FockState2(int cutoff_) : cutoff(cutoff_) {
  if (cutoff < 1) throw std::invalid_argument("FockState2: cutoff must be >= 1");
  amp.assign(static_cast<std::size_t>(cutoff + 1) * (cutoff + 1), {0.0, 0.0});
}

double FockState2::norm2() const {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s;
}

FockState2 FockState2::normalized() const {
  double n2 = norm2();
  if (n2 < 1e-300) throw numerical_error("normalized: state has (near-)zero norm");
  FockState2 out = *this;
  double inv = 1.0 / std::sqrt(n2);
  for (auto& a : out.amp) a *= inv;
  return out;
}

int suggest_cutoff(double r, int k, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("suggest_cutoff: tol must be > 0");
  if (k < 0) throw std::invalid_argument("suggest_cutoff: k must be >= 0");
  const double t2 = std::tanh(r) * std::tanh(r);
  for (int n = 1; n <= 100000; ++n) {
    double tail = std::pow(t2, n + 1) * std::pow(static_cast<double>(n + k), k);
    if (tail < tol) return n;
  }
  throw numerical_error("suggest_cutoff: no cutoff below 100000 meets tolerance");
}

FockState2 tmsv(const SqueezeParams& params, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("tmsv: cutoff must be >= 1");
  const double t = std::tanh(params.r);
  const double tail = std::pow(t, 2 * (cutoff + 1));
  if (tail > 1e-6)
    throw numerical_error("tmsv: cutoff too small (tail bound " + std::to_string(tail) + " > 1e-6)");
  FockState2 s(cutoff);
  const double inv_cosh = 1.0 / std::cosh(params.r);
  for (int n = 0; n <= cutoff; ++n)
    s.at(n, n) = std::polar(std::pow(t, n) * inv_cosh, params.theta * n);
  s.tail_bound = tail;
  return s;
}

FockState2 apply_ladder(const FockState2& state, Mode mode, Ladder kind, int count) {
  if (count < 1) throw std::invalid_argument("apply_ladder: count must be >= 1");
  FockState2 cur = state;
  const int N = state.cutoff;
  // "support fits under the cutoff" = the mass a creation pushes past N is
  // negligible next to the state itself and its existing truncation error
  const double drop_budget = std::max(1e-9 * state.norm2(), 10.0 * state.tail_bound);
  double dropped = 0.0;
  for (int step = 0; step < count; ++step) {
    FockState2 next(N);
    next.tail_bound = cur.tail_bound;
    for (int na = 0; na <= N; ++na) {
      for (int nb = 0; nb <= N; ++nb) {
        const std::complex<double> a = cur.at(na, nb);
        if (a == std::complex<double>{0.0, 0.0}) continue;
        const int n = (mode == Mode::a) ? na : nb;
        if (kind == Ladder::create) {
          if (n == N) {
            dropped += std::norm(a) * (n + 1.0);
            continue;
          }
          const std::complex<double> v = a * std::sqrt(n + 1.0);
          if (mode == Mode::a)
            next.at(na + 1, nb) += v;
          else
            next.at(na, nb + 1) += v;
        } else {
          if (n == 0) continue;  // a|0> = 0
          const std::complex<double> v = a * std::sqrt(static_cast<double>(n));
          if (mode == Mode::a)
            next.at(na - 1, nb) += v;
          else
            next.at(na, nb - 1) += v;
        }
      }
    }
    // a truncated tail transforms too; crude growth bound keeps it honest
    if (kind == Ladder::create) next.tail_bound = cur.tail_bound * (N + 1.0) + dropped;
    cur = std::move(next);
  }
  if (kind == Ladder::create && dropped > drop_budget)
    throw numerical_error("apply_ladder: creation pushed " + std::to_string(dropped) +
                          " squared-norm past the cutoff; raise the cutoff");
  if (cur.norm2() < 1e-300) cur.flagged_zero = true;
  return cur;
}

std::pair<FockState2, double> herald_subtract(const FockState2& state, const HeraldConfig& config) {
  if (!(config.transmittance > 0.0) || !(config.transmittance <= 1.0))
    throw std::invalid_argument("herald_subtract: transmittance must be in (0, 1]");
  if (config.stages < 1) throw std::invalid_argument("herald_subtract: stages must be >= 1");
  if (config.ancilla_cutoff < 1)
    throw std::invalid_argument("herald_subtract: ancilla_cutoff must be >= 1");
  if (std::abs(state.norm2() - 1.0) > 1e-10)
    throw std::invalid_argument("herald_subtract: input state must be normalized");

  const int N = state.cutoff;
  const double t = std::sqrt(config.transmittance);
  const double rho = std::sqrt(1.0 - config.transmittance);
  FockState2 cur = state;
  double probability = 1.0;
  for (int stage = 0; stage < config.stages; ++stage) {
    // BS with vacuum ancilla then <1| on the ancilla:
    //   amp'(n-1, m) = rho * sqrt(n) * t^{n-1} * amp(n, m)
    FockState2 next(N);
    next.tail_bound = cur.tail_bound;
    for (int na = 1; na <= N; ++na)
      for (int nb = 0; nb <= N; ++nb)
        next.at(na - 1, nb) =
            rho * std::sqrt(static_cast<double>(na)) * std::pow(t, na - 1) * cur.at(na, nb);
    const double p = next.norm2();
    probability *= p;
    if (p < 1e-300) {
      FockState2 empty(N);
      empty.flagged_zero = true;
      return {empty, 0.0};
    }
    cur = next.normalized();
    cur.tail_bound = next.tail_bound / p;
  }
  return {cur, probability};
}

SchmidtState schmidt_coefficients(const FockState2& state) {
  const int N = state.cutoff;
  const double total = state.norm2();
  if (total < 1e-300) throw std::invalid_argument("schmidt_coefficients: zero state");
  // probability mass per diagonal band d = n_a - n_b
  std::vector<double> band_mass(static_cast<std::size_t>(2 * N + 1), 0.0);
  for (int na = 0; na <= N; ++na)
    for (int nb = 0; nb <= N; ++nb)
      band_mass[static_cast<std::size_t>(na - nb + N)] += std::norm(state.at(na, nb));
  const auto best = std::max_element(band_mass.begin(), band_mass.end());
  const int d = static_cast<int>(best - band_mass.begin()) - N;
  if (total - *best >= 1e-10 * total)
    throw std::invalid_argument("schmidt_coefficients: state is not single-band");
  if (d < 0)
    throw std::invalid_argument("schmidt_coefficients: band index is negative (expected n_a >= n_b)");

  SchmidtState out;
  out.k = d;
  const double inv = 1.0 / std::sqrt(total);
  out.coefficients.reserve(static_cast<std::size_t>(N - d + 1));
  for (int m = 0; m + d <= N; ++m)
    out.coefficients.push_back(std::abs(state.at(m + d, m)) * inv);
  // phase ramp metadata from the dominant adjacent pair
  out.ramp_theta = 0.0;
  double best_w = 0.0;
  for (int m = 0; m + d + 1 <= N; ++m) {
    const std::complex<double> a0 = state.at(m + d, m), a1 = state.at(m + d + 1, m + 1);
    const double w = std::abs(a0) * std::abs(a1);
    if (w > best_w && w > 0.0) {
      best_w = w;
      out.ramp_theta = std::arg(a1 / a0);
    }
  }
  out.normalized = true;
  return out;
}

double fidelity(const FockState2& x, const FockState2& y) {
  if (x.cutoff != y.cutoff) throw std::invalid_argument("fidelity: cutoff mismatch");
  if (std::abs(x.norm2() - 1.0) > 1e-8 || std::abs(y.norm2() - 1.0) > 1e-8)
    throw std::invalid_argument("fidelity: states must be normalized");
  std::complex<double> ip = 0.0;
  for (std::size_t i = 0; i < x.amp.size(); ++i) ip += std::conj(x.amp[i]) * y.amp[i];
  return std::min(1.0, std::norm(ip));
}

std::complex<double> wavefunction_from_fock(const FockState2& state, double x, double y) {
  const int N = state.cutoff;
  const auto phix = specfun::oscillator_eigenfunctions(N, x);
  const auto phiy = specfun::oscillator_eigenfunctions(N, y);
  std::complex<double> s = 0.0;
  for (int na = 0; na <= N; ++na) {
    std::complex<double> row = 0.0;
    for (int nb = 0; nb <= N; ++nb) {
      const auto& a = state.at(na, nb);
      if (a != std::complex<double>{0.0, 0.0})
        row += a * phiy[static_cast<std::size_t>(nb)];
    }
    s += row * phix[static_cast<std::size_t>(na)];
  }
  return s;
}

}  // namespace tmsv::fock
