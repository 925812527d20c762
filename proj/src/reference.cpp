#include "tmsv/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tmsv/parallel.hpp"
#include "tmsv/quadrature.hpp"

namespace tmsv::reference {
namespace {

void require_positive(double half_width, int order, const char* who) {
  if (!(half_width > 0.0))
    throw std::invalid_argument(std::string(who) + ": half_width must be > 0");
  if (order <= 0) throw std::invalid_argument(std::string(who) + ": order must be > 0");
}

}  // namespace

WignerIntegrals wigner_box_integrals(const SqueezeParams& params, int k,
                                     double half_width, int order) {
  require_positive(half_width, order, "wigner_box_integrals");
  if (k < 0) throw std::invalid_argument("wigner_box_integrals: k must be >= 0");
  const quadrature::Rule rule =
      quadrature::gauss_legendre(static_cast<std::size_t>(order), -half_width, half_width);

  WignerIntegrals out;
  out.min_value = std::numeric_limits<double>::infinity();
  out.max_value = -std::numeric_limits<double>::infinity();
  KahanAcc plain, absolute;
  for (std::size_t ix = 0; ix < rule.size(); ++ix) {
    const double x = rule.node[ix];
    for (std::size_t ipx = 0; ipx < rule.size(); ++ipx) {
      const double px = rule.node[ipx];
      const double wxp = rule.weight[ix] * rule.weight[ipx];
      for (std::size_t iy = 0; iy < rule.size(); ++iy) {
        const double y = rule.node[iy];
        const double wxpy = wxp * rule.weight[iy];
        for (std::size_t ipy = 0; ipy < rule.size(); ++ipy) {
          const wigner::PhaseSpacePoint4 pt{{x, y}, {px, rule.node[ipy]}};
          const double w = wigner::wigner_tmsv(params, k, pt);
          const double contrib = wxpy * rule.weight[ipy] * w;
          plain.add(contrib);
          absolute.add(std::abs(contrib));
          out.min_value = std::min(out.min_value, w);
          out.max_value = std::max(out.max_value, w);
        }
      }
    }
  }
  out.integral = plain.sum;
  out.abs_integral = absolute.sum;
  out.negative_volume = std::max(0.0, 0.5 * (out.abs_integral - out.integral));
  return out;
}

WignerIntegrals wigner_slice_integrals(const SqueezeParams& params, int k,
                                       const wigner::WignerSliceSpec& spec, int order) {
  if (order <= 0) throw std::invalid_argument("wigner_slice_integrals: order must be > 0");
  if (k < 0) throw std::invalid_argument("wigner_slice_integrals: k must be >= 0");
  spec.grid.validate();
  const quadrature::Rule ru = quadrature::gauss_legendre(static_cast<std::size_t>(order),
                                                         spec.grid.x_min, spec.grid.x_max);
  const quadrature::Rule rv = quadrature::gauss_legendre(static_cast<std::size_t>(order),
                                                         spec.grid.y_min, spec.grid.y_max);

  WignerIntegrals out;
  out.min_value = std::numeric_limits<double>::infinity();
  out.max_value = -std::numeric_limits<double>::infinity();
  KahanAcc plain, absolute;
  for (std::size_t iv = 0; iv < rv.size(); ++iv) {
    for (std::size_t iu = 0; iu < ru.size(); ++iu) {
      const wigner::PhaseSpacePoint4 pt = wigner::slice_point(spec, ru.node[iu], rv.node[iv]);
      const double w = wigner::wigner_tmsv(params, k, pt);
      const double contrib = rv.weight[iv] * ru.weight[iu] * w;
      plain.add(contrib);
      absolute.add(std::abs(contrib));
      out.min_value = std::min(out.min_value, w);
      out.max_value = std::max(out.max_value, w);
    }
  }
  out.integral = plain.sum;
  out.abs_integral = absolute.sum;
  out.negative_volume = std::max(0.0, 0.5 * (out.abs_integral - out.integral));
  return out;
}

Field2D<double> wigner_slice_field(const SqueezeParams& params, int k,
                                   const wigner::WignerSliceSpec& spec) {
  if (k < 0) throw std::invalid_argument("wigner_slice_field: k must be >= 0");
  spec.grid.validate();
  Field2D<double> field(spec.grid);
  for (std::size_t iy = 0; iy < spec.grid.ny; ++iy) {
    const double v = spec.grid.y(iy);
    for (std::size_t ix = 0; ix < spec.grid.nx; ++ix) {
      const wigner::PhaseSpacePoint4 pt = wigner::slice_point(spec, spec.grid.x(ix), v);
      field.at(ix, iy) = wigner::wigner_tmsv(params, k, pt);
    }
  }
  return field;
}

Field2D<std::complex<double>> wavefunction_grid(const states::PolyGauss& pg,
                                                const GridSpec& grid) {
  grid.validate();
  Field2D<std::complex<double>> f(grid);
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.y(iy);
    for (std::size_t ix = 0; ix < grid.nx; ++ix)
      f.at(ix, iy) = states::evaluate(pg, {grid.x(ix), y});
  }
  return f;
}

double position_marginal(const SqueezeParams& params, int k, double x, double y,
                         double half_width, int order) {
  require_positive(half_width, order, "position_marginal");
  if (k < 0) throw std::invalid_argument("position_marginal: k must be >= 0");
  const quadrature::Rule rule =
      quadrature::gauss_legendre(static_cast<std::size_t>(order), -half_width, half_width);
  KahanAcc acc;
  for (std::size_t ipx = 0; ipx < rule.size(); ++ipx) {
    for (std::size_t ipy = 0; ipy < rule.size(); ++ipy) {
      const wigner::PhaseSpacePoint4 pt{{x, y}, {rule.node[ipx], rule.node[ipy]}};
      acc.add(rule.weight[ipx] * rule.weight[ipy] * wigner::wigner_tmsv(params, k, pt));
    }
  }
  return acc.sum;
}

}  // namespace tmsv::reference
