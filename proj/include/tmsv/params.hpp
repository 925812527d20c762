#pragma once
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace tmsv {

// Two-mode squeezing parameters.  theta is canonicalized to (-pi, pi].
struct SqueezeParams {
  double r = 0.0;
  double theta = 0.0;

  SqueezeParams() = default;
  SqueezeParams(double r_, double theta_) : r(r_), theta(theta_) {
    if (!(r >= 0.0) || !std::isfinite(r))
      throw std::invalid_argument("SqueezeParams: r must be finite and >= 0");
    if (!std::isfinite(theta)) throw std::invalid_argument("SqueezeParams: theta must be finite");
    theta = std::remainder(theta, 2.0 * std::numbers::pi);
    if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  }

  // eta = e^{i theta} tanh r; |eta| < 1 always.
  std::complex<double> eta() const {
    return std::polar(std::tanh(r), theta);
  }
};

struct QuadraturePoint {
  double x = 0.0;
  double y = 0.0;
};

}  // namespace tmsv
