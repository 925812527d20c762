#pragma once
#include <cstddef>
#include <vector>

namespace tmsv::quadrature {

// Gauss-Legendre rule on [-1, 1]; nodes ascending, weights positive.
struct Rule {
  std::vector<double> node;
  std::vector<double> weight;
  std::size_t size() const { return node.size(); }
};

// Nodes via Newton iteration on P_n (Chebyshev initial guess); accurate to
// ~1e-15 for n up to several thousand.
Rule gauss_legendre(std::size_t n);

// Same rule mapped to [a, b].
Rule gauss_legendre(std::size_t n, double a, double b);

}  // namespace tmsv::quadrature
