#include "tmsv/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "tmsv/parallel.hpp"
#include "tmsv/specfun.hpp"

namespace tmsv::entanglement {

namespace {

// Coefficient magnitude at index m, without the convention's global prefactor
// and without the tanh^m r factor.
double amplitude(std::int64_t m, int k, Amplitudes a) {
  if (k == 0) return 1.0;  // both conventions reduce to the squeezed-vacuum series
  if (a == Amplitudes::paper_literal) return std::sqrt(static_cast<double>(m + k));
  return std::exp(0.5 * (specfun::log_factorial(static_cast<int>(m) + k) -
                         specfun::log_factorial(static_cast<int>(m))));
}

double prefactor(double r, int k, Amplitudes a) {
  if (a == Amplitudes::operator_derived) return 1.0;
  return (k == 0) ? 1.0 / std::cosh(r) : 1.0 / (std::cosh(r) * std::cosh(r));
}

// Geometric-series tails over m > N (exact closed forms).
double tail_geo0(double q, std::int64_t n) { return std::pow(q, double(n + 1)) / (1.0 - q); }
double tail_geo1(double q, std::int64_t n) {
  const double nn = static_cast<double>(n);
  return std::pow(q, nn + 1.0) * ((nn + 1.0) - nn * q) / ((1.0 - q) * (1.0 - q));
}
double tail_geo2(double q, std::int64_t n) {
  const double nn = static_cast<double>(n);
  const double omq = 1.0 - q;
  return std::pow(q, nn + 1.0) *
         ((nn + 1.0) * (nn + 1.0) - (2.0 * nn * nn + 2.0 * nn - 1.0) * q + nn * nn * q * q) /
         (omq * omq * omq);
}

// Dropped tail of sum c_m^2 beyond cutoff N, relative to the total, for the
// given amplitude convention.  Exact for paper_literal; a geometric upper
// bound for operator_derived.
double relative_sq_tail(double t, int k, Amplitudes a, std::int64_t n) {
  const double q = t * t;
  if (q == 0.0) return 0.0;
  if (k == 0) return std::pow(q, double(n + 1));
  if (a == Amplitudes::paper_literal) {
    const double tail = tail_geo1(q, n) + k * tail_geo0(q, n);
    const double total = (k - (k - 1) * q) / ((1.0 - q) * (1.0 - q));
    return tail / total;
  }
  // operator_derived: term_m = q^m (m+k)!/m!; the term ratio
  // q (m+k+1)/(m+1) decreases with m, so the tail is bounded by the first
  // dropped term times a geometric series at the ratio's value there.
  const double rho = q * (static_cast<double>(n) + k + 2.0) / (static_cast<double>(n) + 2.0);
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  const double log_first = (static_cast<double>(n) + 1.0) * std::log(q) +
                           specfun::log_factorial(static_cast<int>(n) + 1 + k) -
                           specfun::log_factorial(static_cast<int>(n) + 1);
  const double log_total = specfun::log_factorial(k) - (k + 1) * std::log1p(-q);
  return std::exp(log_first - log_total) / (1.0 - rho);
}

// Converged sum over m of t^m * amplitude(m), with a rigorous geometric
// stopping bound (the amplitude ratio decreases toward 1, so once
// t * ratio < 1 the remainder is geometrically dominated).
double amplitude_sum(double t, int k, Amplitudes a) {
  if (t == 0.0) return amplitude(0, k, a);
  KahanAcc acc;
  double p = 1.0;
  for (std::int64_t m = 0; m < 50'000'000; ++m) {
    const double term = p * amplitude(m, k, a);
    acc.add(term);
    const double grow =
        (k == 0) ? 1.0
        : (a == Amplitudes::paper_literal)
            ? std::sqrt((static_cast<double>(m) + k + 1.0) / (static_cast<double>(m) + k))
            : std::sqrt((static_cast<double>(m) + k + 1.0) / (static_cast<double>(m) + 1.0));
    const double rho = t * grow;
    if (rho < 1.0 && term * rho / (1.0 - rho) <= 1e-16 * acc.sum) return acc.sum;
    p *= t;
  }
  throw numerical_error("amplitude_sum: series did not converge");
}

SqueezeParams with_r(const SqueezeParams& tmpl, double r) { return SqueezeParams(r, tmpl.theta); }

double evaluate_measure(MeasureKind measure, const SqueezeParams& p, int k,
                        const CoefficientSource& source) {
  switch (measure) {
    case MeasureKind::log_negativity:
    case MeasureKind::log_negativity_paper_literal: {
      const int cutoff = suggest_coefficient_cutoff(p.r, k, source.amplitudes, 1e-21);
      const fock::SchmidtState s = coefficients(p, k, source, cutoff);
      return log_negativity(s, measure == MeasureKind::log_negativity
                                   ? NegativityFormula::summed_amplitude
                                   : NegativityFormula::paper_literal);
    }
    case MeasureKind::negativity_ratio:
      return negativity_ratio(p, k, source);
    case MeasureKind::ef_paper:
      return ef_paper(p, k);
    case MeasureKind::entropy_normalized: {
      if (!source.normalize)
        throw std::invalid_argument("entropy_normalized requires a normalizing source");
      const int cutoff = suggest_coefficient_cutoff(p.r, k, source.amplitudes, 1e-14);
      return entanglement_entropy(coefficients(p, k, source, cutoff));
    }
  }
  throw std::invalid_argument("scan: unknown measure");
}

}  // namespace

int suggest_coefficient_cutoff(double r, int k, Amplitudes amplitudes, double tol) {
  if (k < 0) throw std::invalid_argument("suggest_coefficient_cutoff: k must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("suggest_coefficient_cutoff: tol must be > 0");
  const double t = std::tanh(r);
  for (std::int64_t n = std::max(k, 2); n < 40'000'000; n += 1 + n / 16) {
    if (relative_sq_tail(t, k, amplitudes, n) < tol) return static_cast<int>(n);
  }
  throw numerical_error("suggest_coefficient_cutoff: no admissible cutoff below 4e7");
}

fock::SchmidtState coefficients(const SqueezeParams& params, int k, const CoefficientSource& source,
                                int cutoff) {
  if (k < 0) throw std::invalid_argument("coefficients: k must be >= 0");
  if (cutoff < 0) throw std::invalid_argument("coefficients: cutoff must be >= 0");
  const double t = std::tanh(params.r);
  const double rel_tail = relative_sq_tail(t, k, source.amplitudes, cutoff);
  if (!(rel_tail < 1e-12)) {
    std::ostringstream msg;
    msg << "coefficients: cutoff " << cutoff << " leaves relative sum-of-squares tail " << rel_tail;
    throw numerical_error(msg.str());
  }

  fock::SchmidtState s;
  s.k = k;
  s.ramp_theta = params.theta;
  s.coefficients.resize(static_cast<std::size_t>(cutoff) + 1);
  const double pref = prefactor(params.r, k, source.amplitudes);
  double p = 1.0;
  KahanAcc sq;
  for (int m = 0; m <= cutoff; ++m) {
    const double c = pref * p * amplitude(m, k, source.amplitudes);
    s.coefficients[static_cast<std::size_t>(m)] = c;
    sq.add(c * c);
    p *= t;
  }
  if (source.normalize) {
    const double norm = std::sqrt(sq.sum);
    for (double& c : s.coefficients) c /= norm;
    s.normalized = true;
  } else {
    s.normalized = std::abs(sq.sum - 1.0) <= 1e-12;
  }
  return s;
}

double log_negativity(const fock::SchmidtState& s, NegativityFormula formula) {
  if (s.coefficients.empty())
    throw std::invalid_argument("log_negativity: empty coefficient list");
  if (formula == NegativityFormula::summed_amplitude) {
    if (!s.normalized)
      throw std::invalid_argument("log_negativity: summed_amplitude requires normalized input");
    KahanAcc sum;
    for (double c : s.coefficients) sum.add(std::abs(c));
    return 2.0 * std::log2(sum.sum);
  }
  KahanAcc sum2;
  for (double c : s.coefficients) sum2.add(c * c);
  return 2.0 * std::log2(sum2.sum);
}

RatioReport negativity_ratio_report(const SqueezeParams& params, int k,
                                    const CoefficientSource& source) {
  if (!(params.r > 0.0))
    throw std::invalid_argument("negativity_ratio: r must be > 0 (both negativities vanish at 0)");
  const double t = std::tanh(params.r);

  RatioReport rep;
  const double s1 = amplitude_sum(t, k, source.amplitudes);
  const double log_norm2 = specfun::log_factorial(k) - (k + 1) * std::log1p(-t * t);
  rep.literal_argument_ratio = std::exp(2.0 * std::log(s1) - 2.0 * params.r - log_norm2);

  const int cutoff = suggest_coefficient_cutoff(params.r, k, source.amplitudes, 1e-21);
  const fock::SchmidtState s =
      coefficients(params, k, CoefficientSource{source.amplitudes, true}, cutoff);
  const double eps_k = log_negativity(s, NegativityFormula::summed_amplitude);
  const double eps_tmsv = 2.0 * params.r * std::numbers::log2e;
  rep.log_ratio = eps_k / eps_tmsv;
  return rep;
}

double negativity_ratio(const SqueezeParams& params, int k, const CoefficientSource& source) {
  return negativity_ratio_report(params, k, source).literal_argument_ratio;
}

double entanglement_entropy(const fock::SchmidtState& s) {
  if (s.coefficients.empty())
    throw std::invalid_argument("entanglement_entropy: empty coefficient list");
  if (!s.normalized)
    throw std::invalid_argument("entanglement_entropy: requires normalized input");
  KahanAcc sq, ent;
  for (double c : s.coefficients) sq.add(c * c);
  if (std::abs(sq.sum - 1.0) > 1e-9)
    throw std::invalid_argument("entanglement_entropy: coefficients are not unit-normalized");
  for (double c : s.coefficients) {
    const double c2 = c * c;
    if (c2 > 0.0) ent.add(-c2 * std::log2(c2));
  }
  return ent.sum;
}

double ef_paper(const SqueezeParams& params, int k, int cutoff) {
  if (k < 0) throw std::invalid_argument("ef_paper: k must be >= 0");
  if (cutoff < 0) throw std::invalid_argument("ef_paper: cutoff must be >= 0");
  const double t = std::tanh(params.r);
  const double pref = prefactor(params.r, k, Amplitudes::paper_literal);
  KahanAcc s1, ent;
  double p = 1.0;
  for (int m = 0; m <= cutoff; ++m) {
    const double c = pref * p * amplitude(m, k, Amplitudes::paper_literal);
    s1.add(c);
    const double c2 = c * c;
    if (c2 > 0.0) ent.add(-c2 * std::log2(c2));
    p *= t;
  }
  return s1.sum * s1.sum * ent.sum;
}

FormationTailBounds ef_paper_tail_bounds(const SqueezeParams& params, int k, int cutoff) {
  if (k < 0) throw std::invalid_argument("ef_paper_tail_bounds: k must be >= 0");
  if (cutoff < 0) throw std::invalid_argument("ef_paper_tail_bounds: cutoff must be >= 0");
  const double t = std::tanh(params.r);
  FormationTailBounds out;
  if (t == 0.0) return out;
  const double pref = prefactor(params.r, k, Amplitudes::paper_literal);
  const std::int64_t n = cutoff;

  // sum_{m>N} t^m sqrt(m+k) <= sum_{m>N} t^m (m+k) / sqrt(N+1+k).
  const double lin_tail = tail_geo1(t, n) + k * tail_geo0(t, n);
  out.coefficient_sum = pref * lin_tail / std::sqrt(static_cast<double>(n) + 1.0 + k);

  // -c^2 log2 c^2 <= c^2 (A + B m) with A = -log2(pref^2) >= 0,
  // B = -log2(t^2) >= 0 (the dropped -log2(m+k) only strengthens the bound;
  // where c^2 > 1 the left side is negative and the bound holds trivially).
  const double q = t * t;
  const double a_coef = -2.0 * std::log2(pref);
  const double b_coef = -2.0 * std::log2(t);
  const double t0 = tail_geo0(q, n), t1 = tail_geo1(q, n), t2 = tail_geo2(q, n);
  out.entropy_sum = pref * pref * (a_coef * (t1 + k * t0) + b_coef * (t2 + k * t1));
  return out;
}

EntanglementCurve scan(MeasureKind measure, const SqueezeParams& params_template, int k,
                       const std::vector<double>& r_grid, const CoefficientSource& source) {
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0))
      throw std::invalid_argument("scan: r_grid values must be positive");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
      throw std::invalid_argument("scan: r_grid must be strictly increasing");
  }

  EntanglementCurve curve;
  curve.r_values = r_grid;
  curve.values.resize(r_grid.size());
  curve.k = k;
  curve.measure = measure;
  curve.source = source;

  std::vector<std::string> errors(r_grid.size());
  parallel_for(static_cast<std::int64_t>(r_grid.size()), [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      curve.values[idx] = evaluate_measure(measure, with_r(params_template, r_grid[idx]), k, source);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      std::ostringstream msg;
      msg << "scan: at r=" << r_grid[i] << ": " << errors[i];
      throw numerical_error(msg.str());
    }
  }
  return curve;
}

std::size_t argmax_index(const EntanglementCurve& curve) {
  if (curve.values.empty()) throw std::invalid_argument("argmax_index: empty curve");
  return static_cast<std::size_t>(
      std::max_element(curve.values.begin(), curve.values.end()) - curve.values.begin());
}

ArgmaxResult refined_argmax(MeasureKind measure, const SqueezeParams& params_template, int k,
                            double r_lo, double r_hi, double step, int refine_factor,
                            const CoefficientSource& source) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo))
    throw std::invalid_argument("refined_argmax: need 0 < r_lo < r_hi");
  if (!(step > 0.0) || refine_factor < 1)
    throw std::invalid_argument("refined_argmax: need step > 0 and refine_factor >= 1");

  const auto make_grid = [](double lo, double hi, double h) {
    std::vector<double> g;
    for (double r = lo; r <= hi + 0.5 * h; r += h) g.push_back(std::min(r, hi));
    if (g.size() >= 2 && g[g.size() - 1] <= g[g.size() - 2]) g.pop_back();
    return g;
  };

  const EntanglementCurve coarse = scan(measure, params_template, k, make_grid(r_lo, r_hi, step), source);
  const std::size_t ci = argmax_index(coarse);
  const double center = coarse.r_values[ci];

  const double lo = std::max(r_lo, center - step);
  const double hi = std::min(r_hi, center + step);
  const EntanglementCurve fine =
      scan(measure, params_template, k, make_grid(lo, hi, step / refine_factor), source);
  const std::size_t fi = argmax_index(fine);
  return {fine.r_values[fi], fine.values[fi]};
}

}  // namespace tmsv::entanglement
