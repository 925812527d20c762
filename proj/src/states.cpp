#include "tmsv/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tmsv/parallel.hpp"
#include "tmsv/quadrature.hpp"

namespace tmsv::states {

cplx PolyGauss::poly_at(double x, double y) const {
  // Horner in x; each x-coefficient is itself Horner-evaluated in y.
  cplx acc = 0.0;
  for (int i = degree; i >= 0; --i) {
    cplx row = 0.0;
    for (int j = degree; j >= 0; --j) row = row * y + c(i, j);
    acc = acc * x + row;
  }
  return acc;
}

cplx PolyGauss::exponent(double x, double y) const {
  const cplx e2 = eta * eta;
  const double q2 = x * x + y * y;
  return (2.0 * x * y * eta - q2 * e2) / (1.0 - e2) - 0.5 * q2;
}

PolyGauss tmsv_wavefunction(const SqueezeParams& params) {
  PolyGauss pg;
  pg.params = params;
  pg.eta = params.eta();
  pg.degree = 0;
  pg.photons_removed = 0;
  pg.coeff = {cplx{1.0, 0.0}};
  const cplx one_minus_e2 = 1.0 - pg.eta * pg.eta;  // Re > 0 for |eta| < 1
  const double ch = std::cosh(params.r);
  pg.prefactor = 1.0 / (ch * std::sqrt(std::numbers::pi * one_minus_e2));
  return pg;
}

PolyGauss subtracted_wavefunction(const SqueezeParams& params, int k) {
  if (k < 0) throw std::invalid_argument("subtracted_wavefunction: k must be >= 0");
  PolyGauss base = tmsv_wavefunction(params);
  if (k == 0) return base;

  // (x - d/dx)(P e^G) = [m(x, y) P - dP/dx] e^G with m = 2(x - eta*y)/(1 - eta^2)
  const cplx e2 = base.eta * base.eta;
  const cplx ax = 2.0 / (1.0 - e2);           // coefficient of x in m
  const cplx ay = -2.0 * base.eta / (1.0 - e2);  // coefficient of y in m

  PolyGauss pg;
  pg.params = params;
  pg.eta = base.eta;
  pg.degree = k;
  pg.photons_removed = k;
  pg.coeff.assign(static_cast<std::size_t>(k + 1) * (k + 1), cplx{0.0, 0.0});
  pg.c(0, 0) = 1.0;

  std::vector<cplx> next(pg.coeff.size());
  for (int step = 0; step < k; ++step) {
    std::fill(next.begin(), next.end(), cplx{0.0, 0.0});
    auto at = [&](std::vector<cplx>& v, int i, int j) -> cplx& {
      return v[static_cast<std::size_t>(i) * (k + 1) + static_cast<std::size_t>(j)];
    };
    for (int i = 0; i <= step; ++i)
      for (int j = 0; j + i <= step; ++j) {
        const cplx cij = pg.c(i, j);
        if (cij == cplx{0.0, 0.0}) continue;
        at(next, i + 1, j) += ax * cij;        // x * P
        at(next, i, j + 1) += ay * cij;        // y * P
        if (i >= 1) at(next, i - 1, j) -= static_cast<double>(i) * cij;  // -dP/dx
      }
    pg.coeff = next;
  }

  const double theta = params.theta;
  pg.prefactor = base.prefactor * std::polar(1.0, k * theta) /
                 (std::pow(2.0, 0.5 * k) * std::cosh(params.r));
  return pg;
}

cplx evaluate(const PolyGauss& pg, QuadraturePoint pt) {
  if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
    throw std::invalid_argument("evaluate: point must be finite");
  return pg.prefactor * pg.poly_at(pt.x, pt.y) * std::exp(pg.exponent(pt.x, pt.y));
}

double l2_norm(const PolyGauss& pg) {
  const double L = 5.5 * std::sqrt(std::cosh(2.0 * pg.params.r)) + pg.photons_removed;
  const std::size_t n = static_cast<std::size_t>(48 + 12 * std::ceil(L));
  const auto rule = quadrature::gauss_legendre(n, -L, L);
  // outer x rows in parallel, fixed-order fold
  const double total = indexed_sum(static_cast<std::int64_t>(n), [&](std::int64_t ix) {
    double row = 0.0;
    const double x = rule.node[static_cast<std::size_t>(ix)];
    for (std::size_t iy = 0; iy < n; ++iy) {
      const double y = rule.node[iy];
      row += rule.weight[iy] * std::norm(evaluate(pg, {x, y}));
    }
    return rule.weight[static_cast<std::size_t>(ix)] * row;
  });
  return std::sqrt(total);
}

PolyGauss normalized(const PolyGauss& pg) {
  const double n = l2_norm(pg);
  if (!(n > 1e-300)) throw std::invalid_argument("normalized: zero-norm field");
  PolyGauss out = pg;
  out.prefactor /= n;
  return out;
}

Field2D<cplx> evaluate_grid(const PolyGauss& pg, const GridSpec& grid) {
  grid.validate();
  Field2D<cplx> f(grid);
  parallel_for(static_cast<std::int64_t>(grid.ny), [&](std::int64_t iy) {
    const double y = grid.y(static_cast<std::size_t>(iy));
    for (std::size_t ix = 0; ix < grid.nx; ++ix)
      f.at(ix, static_cast<std::size_t>(iy)) = evaluate(pg, {grid.x(ix), y});
  });
  return f;
}

IntensityPhase intensity_phase_grid(const PolyGauss& pg, const GridSpec& grid) {
  const auto f = evaluate_grid(pg, grid);
  IntensityPhase out{Field2D<double>(grid), Field2D<double>(grid)};
  parallel_for(static_cast<std::int64_t>(grid.ny), [&](std::int64_t iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const cplx v = f.at(ix, static_cast<std::size_t>(iy));
      out.intensity.at(ix, static_cast<std::size_t>(iy)) = std::norm(v);
      out.phase.at(ix, static_cast<std::size_t>(iy)) = std::arg(v);
    }
  });
  return out;
}

}  // namespace tmsv::states
