#include "tmsv/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmsv::specfun {

double laguerre(int n, int a, double x) {
  if (n < 0 || a < 0) throw std::invalid_argument("laguerre: n and a must be >= 0");
  if (!std::isfinite(x)) throw std::invalid_argument("laguerre: x must be finite");
  if (n == 0) return 1.0;
  double lm1 = 1.0;                              // L_0
  double l = 1.0 + static_cast<double>(a) - x;   // L_1
  for (int j = 1; j < n; ++j) {
    double lp1 = ((2.0 * j + 1.0 + a - x) * l - (j + static_cast<double>(a)) * lm1) /
                 (j + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double oscillator_eigenfunction(int n, double x) {
  if (n < 0) throw std::invalid_argument("oscillator_eigenfunction: n must be >= 0");
  const double phi0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return phi0;
  double pm1 = phi0;
  double p = std::numbers::sqrt2 * x * phi0;  // phi_1
  for (int j = 1; j < n; ++j) {
    double pp1 = x * std::sqrt(2.0 / (j + 1.0)) * p - std::sqrt(j / (j + 1.0)) * pm1;
    pm1 = p;
    p = pp1;
  }
  return p;
}

std::vector<double> oscillator_eigenfunctions(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("oscillator_eigenfunctions: n_max must be >= 0");
  std::vector<double> phi(static_cast<std::size_t>(n_max) + 1);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n_max >= 1) phi[1] = std::numbers::sqrt2 * x * phi[0];
  for (int j = 1; j < n_max; ++j)
    phi[j + 1] = x * std::sqrt(2.0 / (j + 1.0)) * phi[j] - std::sqrt(j / (j + 1.0)) * phi[j - 1];
  return phi;
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  static const std::array<double, 26> table = [] {
    std::array<double, 26> t{};
    t[0] = 0.0;
    for (int k = 1; k < 26; ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
    return t;
  }();
  if (n < static_cast<int>(table.size())) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace tmsv::specfun
