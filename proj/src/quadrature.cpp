#include "tmsv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmsv::quadrature {

Rule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  Rule r;
  r.node.resize(n);
  r.weight.resize(n);
  const std::size_t m = (n + 1) / 2;  // symmetric: compute half
  for (std::size_t i = 0; i < m; ++i) {
    // Chebyshev-like initial guess for the i-th root (descending),
    // standard Newton on the three-term recurrence.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) + 1.0) * x * p1 -
              static_cast<double>(j) * p2) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.node[i] = -x;
    r.node[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weight[i] = w;
    r.weight[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.node[n / 2] = 0.0;  // enforce exact center
  return r;
}

Rule gauss_legendre(std::size_t n, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
  Rule r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    r.node[i] = mid + half * r.node[i];
    r.weight[i] *= half;
  }
  return r;
}

}  // namespace tmsv::quadrature
