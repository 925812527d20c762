#include "tmsv/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tmsv/errors.hpp"
#include "tmsv/parallel.hpp"
#include "tmsv/quadrature.hpp"
#include "tmsv/specfun.hpp"

namespace tmsv::wigner {
namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;
constexpr double kFourOverPiSq = 4.0 / (std::numbers::pi * std::numbers::pi);

// Exponent drop (relative to the per-row peak) below which quadrature nodes
// are skipped: e^{-100} times the local Laguerre factor is far below any
// reported tolerance.
constexpr double kExpCut = 100.0;

double auto_half_width(double r) { return std::max(3.6, 3.4 * std::exp(r)); }

// Base tensor order for 4D boxes: enough nodes to resolve the narrowest
// axis-aligned Gaussian section (width ~ 1/(2 sqrt(cosh 2r))) across the
// automatic box.
int auto_box_order(double r) {
  return 40 + static_cast<int>(std::ceil(14.0 * std::exp(1.9 * r)));
}

// Per-axis order for 2D slice quadrature: the finest sign structure of the
// sliced Laguerre factor shrinks like 1/sqrt(cosh 2r) in plane units.
int auto_slice_order(double r, double axis_length) {
  return 64 + static_cast<int>(std::ceil(10.0 * axis_length * std::sqrt(std::cosh(2.0 * r))));
}

struct MappedCoeffs {
  double c;   // cosh r
  double s;   // sinh r
  cplx ph;    // e^{i theta}
};

MappedCoeffs mapped(double r, double theta) {
  return {std::cosh(r), std::sinh(r), std::polar(1.0, theta)};
}
MappedCoeffs mapped(const SqueezeParams& p) { return mapped(p.r, p.theta); }

inline std::pair<cplx, cplx> apply_map(const MappedCoeffs& m, cplx alpha, cplx beta) {
  return {m.c * alpha - m.s * m.ph * std::conj(beta),
          m.c * beta - m.s * m.ph * std::conj(alpha)};
}

inline double wigner_value(const MappedCoeffs& m, int k, cplx alpha, cplx beta) {
  auto [at, bt] = apply_map(m, alpha, beta);
  const double na = std::norm(at), nb = std::norm(bt);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return kFourOverPiSq * sign * specfun::laguerre(k, 0, 4.0 * na) * std::exp(-2.0 * (na + nb));
}

struct BoxRun {
  double wsum = 0.0;   // integral of W
  double asum = 0.0;   // integral of |W|
  double minv = std::numeric_limits<double>::infinity();
  double maxv = -std::numeric_limits<double>::infinity();
};

// One tensor-quadrature pass over [-L, L]^4.  Loop order (outer to inner):
// p_y (parallel slabs), y, p_x, x.  W is even under the joint sign flip of
// all four coordinates, so only the lower half of the p_y slabs is computed
// and mirrored slabs enter with doubled weight.  For each (p_y, y, p_x) row
// the mapped magnitudes are exact quadratics in x,
//   |at(x)|^2 = c^2 x^2 + a1 x + a0,   at = c x + Ka,
//   |bt(x)|^2 = s^2 x^2 + b1 x + b0,   bt = -s e^{i th} x + Kb,
// so the row is pruned (or restricted to the nodes within the e^{-kExpCut}
// window around the exponent peak) without evaluating W, and the surviving
// nodes need only two quadratics, one Laguerre and one exp.  Accumulation is
// per-slab Kahan + fixed-order fold, so results do not depend on the thread
// count.
BoxRun box_pass(const SqueezeParams& params, int k, double half_width, int order) {
  const quadrature::Rule rule =
      quadrature::gauss_legendre(static_cast<std::size_t>(order), -half_width, half_width);
  const MappedCoeffs m = mapped(params);
  const auto n = static_cast<std::int64_t>(order);
  const double c = m.c, s = m.s;
  const double c2 = c * c, s2 = s * s;
  const double quad = c2 + s2;  // x^2 coefficient of |at|^2 + |bt|^2 (= cosh 2r)
  const double pref = kFourOverPiSq * ((k % 2 == 0) ? 1.0 : -1.0);
  const double halfw = std::sqrt(kExpCut / (2.0 * quad));

  const std::int64_t nhalf = (n + 1) / 2;
  std::vector<double> pw(static_cast<std::size_t>(nhalf)), pa(static_cast<std::size_t>(nhalf)),
      pmin(static_cast<std::size_t>(nhalf)), pmax(static_cast<std::size_t>(nhalf));

  parallel_for(nhalf, [&](std::int64_t ipy) {
    KahanAcc kw, ka;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    const double py = rule.node[static_cast<std::size_t>(ipy)];
    const bool center = (2 * ipy + 1 == n);  // unpaired middle slab of an odd rule
    const double wpy = rule.weight[static_cast<std::size_t>(ipy)] * (center ? 1.0 : 2.0);

    for (std::int64_t iy = 0; iy < n; ++iy) {
      const double y = rule.node[static_cast<std::size_t>(iy)];
      const double wy = rule.weight[static_cast<std::size_t>(iy)];
      // x-independent parts of the mapped amplitudes for alpha = x - i p_x,
      // beta = y - i p_y:
      //   Ka = -i c p_x - s e^{i th} (y + i p_y)
      //   Kb = c (y - i p_y) - i s e^{i th} p_x
      const cplx sphy = s * m.ph * cplx(y, py);
      const cplx cbeta = c * cplx(y, -py);
      for (std::int64_t ipx = 0; ipx < n; ++ipx) {
        const double px = rule.node[static_cast<std::size_t>(ipx)];
        const cplx ka_c = cplx(0.0, -c * px) - sphy;
        const cplx kb_c = cbeta - cplx(0.0, px) * (s * m.ph);
        const double a1 = 2.0 * c * ka_c.real();
        const double a0 = std::norm(ka_c);
        const double b1 = -2.0 * s * (m.ph.real() * kb_c.real() + m.ph.imag() * kb_c.imag());
        const double b0 = std::norm(kb_c);

        // Exponent E(x) = -2[quad x^2 + (a1+b1) x + (a0+b0)] peaks at xstar.
        const double lin = a1 + b1;
        const double xstar = -lin / (2.0 * quad);
        const double epeak = -2.0 * (a0 + b0 + 0.5 * lin * xstar);
        if (epeak < -kExpCut) continue;  // whole row negligible

        const auto lo = std::lower_bound(rule.node.begin(), rule.node.end(), xstar - halfw) -
                        rule.node.begin();
        const auto hi = std::upper_bound(rule.node.begin(), rule.node.end(), xstar + halfw) -
                        rule.node.begin();
        const double w3 = wpy * wy * rule.weight[static_cast<std::size_t>(ipx)];
        for (auto ix = lo; ix < hi; ++ix) {
          const double x = rule.node[static_cast<std::size_t>(ix)];
          const double na = (c2 * x + a1) * x + a0;
          const double nb = (s2 * x + b1) * x + b0;
          const double wv =
              pref * specfun::laguerre(k, 0, 4.0 * na) * std::exp(-2.0 * (na + nb));
          const double contrib = w3 * rule.weight[static_cast<std::size_t>(ix)] * wv;
          kw.add(contrib);
          ka.add(std::abs(contrib));
          mn = std::min(mn, wv);
          mx = std::max(mx, wv);
        }
      }
    }
    pw[static_cast<std::size_t>(ipy)] = kw.sum;
    pa[static_cast<std::size_t>(ipy)] = ka.sum;
    pmin[static_cast<std::size_t>(ipy)] = mn;
    pmax[static_cast<std::size_t>(ipy)] = mx;
  });

  BoxRun out;
  out.wsum = kahan_fold(pw);
  out.asum = kahan_fold(pa);
  for (double v : pmin) out.minv = std::min(out.minv, v);
  for (double v : pmax) out.maxv = std::max(out.maxv, v);
  return out;
}

struct SliceRun {
  double wsum = 0.0;
  double asum = 0.0;
};

SliceRun slice_pass(const SqueezeParams& params, int k, const WignerSliceSpec& spec,
                    int order_u, int order_v) {
  const quadrature::Rule ru = quadrature::gauss_legendre(static_cast<std::size_t>(order_u),
                                                         spec.grid.x_min, spec.grid.x_max);
  const quadrature::Rule rv = quadrature::gauss_legendre(static_cast<std::size_t>(order_v),
                                                         spec.grid.y_min, spec.grid.y_max);
  const MappedCoeffs m = mapped(params);

  std::vector<double> pw(static_cast<std::size_t>(order_v)), pa(static_cast<std::size_t>(order_v));
  parallel_for(order_v, [&](std::int64_t iv) {
    KahanAcc kw, ka;
    const double v = rv.node[static_cast<std::size_t>(iv)];
    const double wv = rv.weight[static_cast<std::size_t>(iv)];
    for (std::size_t iu = 0; iu < ru.size(); ++iu) {
      const PhaseSpacePoint4 pt = slice_point(spec, ru.node[iu], v);
      const double val = wigner_value(m, k, pt.alpha(), pt.beta());
      const double contrib = wv * ru.weight[iu] * val;
      kw.add(contrib);
      ka.add(std::abs(contrib));
    }
    pw[static_cast<std::size_t>(iv)] = kw.sum;
    pa[static_cast<std::size_t>(iv)] = ka.sum;
  });
  return {kahan_fold(pw), kahan_fold(pa)};
}

}  // namespace

double wigner_fock_single(int n, cplx alpha) {
  if (n < 0) throw std::invalid_argument("wigner_fock_single: n must be >= 0");
  const double z = 4.0 * std::norm(alpha);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return kTwoOverPi * sign * specfun::laguerre(n, 0, z) * std::exp(-0.5 * z);
}

cplx wigner_fock_cross(int m, int n, cplx alpha) {
  if (m < 0 || n < 0) throw std::invalid_argument("wigner_fock_cross: indices must be >= 0");
  if (m < n) return std::conj(wigner_fock_cross(n, m, alpha));
  if (m == n) return wigner_fock_single(n, alpha);
  const int d = m - n;
  const cplx w = 2.0 * std::conj(alpha);
  const double aw = std::abs(w);
  if (aw == 0.0) return cplx(0.0, 0.0);
  const double z = 4.0 * std::norm(alpha);
  // Magnitudes combined in log space: sqrt(n!/m!) underflows and |2a|^d
  // overflows long before their product leaves the double range.
  const double mag = std::exp(0.5 * (specfun::log_factorial(n) - specfun::log_factorial(m)) +
                              static_cast<double>(d) * std::log(aw) - 0.5 * z);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx dir = std::polar(1.0, static_cast<double>(d) * std::arg(w));
  return kTwoOverPi * sign * mag * specfun::laguerre(n, d, z) * dir;
}

std::pair<cplx, cplx> squeeze_map(const SqueezeMap& map, const PhaseSpacePoint4& pt) {
  return apply_map(mapped(map.r, map.theta), pt.alpha(), pt.beta());
}

double wigner_tmsv(const SqueezeParams& params, int k, const PhaseSpacePoint4& pt) {
  if (k < 0) throw std::invalid_argument("wigner_tmsv: k must be >= 0");
  return wigner_value(mapped(params), k, pt.alpha(), pt.beta());
}

PhaseSpacePoint4 slice_point(const WignerSliceSpec& spec, double u, double v) {
  PhaseSpacePoint4 pt{};
  switch (spec.plane) {
    case SlicePlane::xy:
      pt.q.x = u; pt.q.y = v; pt.p.p_x = spec.fixed1; pt.p.p_y = spec.fixed2;
      break;
    case SlicePlane::px_py:
      pt.p.p_x = u; pt.p.p_y = v; pt.q.x = spec.fixed1; pt.q.y = spec.fixed2;
      break;
    case SlicePlane::x_px:
      pt.q.x = u; pt.p.p_x = v; pt.q.y = spec.fixed1; pt.p.p_y = spec.fixed2;
      break;
    case SlicePlane::y_py:
      pt.q.y = u; pt.p.p_y = v; pt.q.x = spec.fixed1; pt.p.p_x = spec.fixed2;
      break;
    case SlicePlane::x_py:
      pt.q.x = u; pt.p.p_y = v; pt.p.p_x = spec.fixed1; pt.q.y = spec.fixed2;
      break;
    case SlicePlane::y_px:
      pt.q.y = u; pt.p.p_x = v; pt.q.x = spec.fixed1; pt.p.p_y = spec.fixed2;
      break;
  }
  return pt;
}

Field2D<double> slice_field(const SqueezeParams& params, int k, const WignerSliceSpec& spec) {
  if (k < 0) throw std::invalid_argument("slice_field: k must be >= 0");
  spec.grid.validate();
  Field2D<double> field(spec.grid);
  const MappedCoeffs m = mapped(params);
  parallel_for(static_cast<std::int64_t>(spec.grid.ny), [&](std::int64_t iy) {
    const double v = spec.grid.y(static_cast<std::size_t>(iy));
    for (std::size_t ix = 0; ix < spec.grid.nx; ++ix) {
      const PhaseSpacePoint4 pt = slice_point(spec, spec.grid.x(ix), v);
      field.at(ix, static_cast<std::size_t>(iy)) = wigner_value(m, k, pt.alpha(), pt.beta());
    }
  });
  return field;
}

double position_marginal(const SqueezeParams& params, int k, double x, double y, int order) {
  if (k < 0) throw std::invalid_argument("position_marginal: k must be >= 0");
  const double half = auto_half_width(params.r);
  // The integrand's squeezed direction has width ~e^{-r} while the window
  // grows as e^{r}; the node count must track e^{2r} with enough margin to
  // keep the identity with the position density below 1e-6 through r ~ 1.2.
  const int n = order > 0
                    ? order
                    : 64 + static_cast<int>(std::ceil(14.0 * std::exp(2.0 * params.r)));
  const quadrature::Rule rule =
      quadrature::gauss_legendre(static_cast<std::size_t>(n), -half, half);
  const MappedCoeffs m = mapped(params);
  return indexed_sum(n, [&](std::int64_t ipx) {
    const double px = rule.node[static_cast<std::size_t>(ipx)];
    KahanAcc acc;
    for (std::size_t ipy = 0; ipy < rule.size(); ++ipy) {
      const double w = rule.weight[static_cast<std::size_t>(ipx)] * rule.weight[ipy];
      acc.add(w * wigner_value(m, k, cplx(x, -px), cplx(y, -rule.node[ipy])));
    }
    return acc.sum;
  });
}

NegativityReport negativity_volume(const SqueezeParams& params, int k, const Box4DSpec& box) {
  if (k < 0) throw std::invalid_argument("negativity_volume: k must be >= 0");
  const double half = box.half_width > 0.0 ? box.half_width : auto_half_width(params.r);
  const int n0 = box.order > 0 ? box.order : auto_box_order(params.r);

  const BoxRun coarse = box_pass(params, k, half, n0);
  const BoxRun fine = box_pass(params, k, half, 2 * n0);

  const double delta_coarse = std::max(0.0, 0.5 * (coarse.asum - coarse.wsum));
  const double delta_fine = std::max(0.0, 0.5 * (fine.asum - fine.wsum));

  NegativityReport rep;
  rep.negative_volume = delta_fine;
  rep.total_abs_volume = fine.asum;
  rep.normalization = fine.wsum;
  rep.min_value = fine.minv;
  rep.max_value = fine.maxv;
  rep.quadrature_error = std::abs(delta_fine - delta_coarse);
  rep.normalization_error = std::abs(fine.wsum - coarse.wsum);
  rep.converged = rep.quadrature_error <= 1e-4;
  rep.order_used = 2 * n0;
  rep.half_width = half;

  // Fringe statistics always describe a 2D section; for box domains use the
  // central x--p_y plane, where the interference stripes live.
  const double ls = std::min(half, 6.0);
  WignerSliceSpec sspec;
  sspec.plane = SlicePlane::x_py;
  sspec.grid = GridSpec{-ls, ls, 401, -ls, ls, 401};
  rep.fringe_count = fringe_count(slice_field(params, k, sspec));
  return rep;
}

NegativityReport negativity_volume_slice(const SqueezeParams& params, int k,
                                         const WignerSliceSpec& spec, int order) {
  if (k < 0) throw std::invalid_argument("negativity_volume_slice: k must be >= 0");
  spec.grid.validate();
  const double len_u = spec.grid.x_max - spec.grid.x_min;
  const double len_v = spec.grid.y_max - spec.grid.y_min;
  const int nu = order > 0 ? order : auto_slice_order(params.r, len_u);
  const int nv = order > 0 ? order : auto_slice_order(params.r, len_v);

  const SliceRun coarse = slice_pass(params, k, spec, nu, nv);
  const SliceRun fine = slice_pass(params, k, spec, 2 * nu, 2 * nv);

  const double delta_coarse = std::max(0.0, 0.5 * (coarse.asum - coarse.wsum));
  const double delta_fine = std::max(0.0, 0.5 * (fine.asum - fine.wsum));

  NegativityReport rep;
  rep.negative_volume = delta_fine;
  rep.total_abs_volume = fine.asum;
  rep.normalization = fine.wsum;
  rep.quadrature_error = std::abs(delta_fine - delta_coarse);
  rep.normalization_error = std::abs(fine.wsum - coarse.wsum);
  rep.converged = rep.quadrature_error <= 1e-4;
  rep.order_used = 2 * std::max(nu, nv);
  rep.half_width = 0.5 * std::max(len_u, len_v);

  const Field2D<double> field = slice_field(params, k, spec);
  rep.fringe_count = fringe_count(field);
  rep.min_value = *std::min_element(field.value.begin(), field.value.end());
  rep.max_value = *std::max_element(field.value.begin(), field.value.end());
  return rep;
}

int fringe_count(const Field2D<double>& field, double threshold) {
  if (threshold > 0.0)
    throw std::invalid_argument("fringe_count: threshold must be <= 0");
  field.grid.validate();
  const std::size_t nx = field.grid.nx, ny = field.grid.ny;
  std::vector<char> seen(nx * ny, 0);
  std::vector<std::size_t> stack;
  int count = 0;
  for (std::size_t start = 0; start < nx * ny; ++start) {
    if (seen[start] || !(field.value[start] < threshold)) continue;
    ++count;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const std::size_t ix = idx % nx, iy = idx / nx;
      const std::size_t nbrs[4] = {
          ix > 0 ? idx - 1 : idx, ix + 1 < nx ? idx + 1 : idx,
          iy > 0 ? idx - nx : idx, iy + 1 < ny ? idx + nx : idx};
      for (std::size_t nb : nbrs) {
        if (nb == idx || seen[nb] || !(field.value[nb] < threshold)) continue;
        seen[nb] = 1;
        stack.push_back(nb);
      }
    }
  }
  return count;
}

double wigner_numeric_oracle(const fock::FockState2& state, const PhaseSpacePoint4& pt) {
  if (std::abs(state.norm2() - 1.0) > 1e-8)
    throw std::invalid_argument("wigner_numeric_oracle: state must be normalized");
  struct Entry {
    int na, nb;
    cplx amp;
  };
  std::vector<Entry> entries;
  for (int na = 0; na <= state.cutoff; ++na)
    for (int nb = 0; nb <= state.cutoff; ++nb) {
      const cplx a = state.at(na, nb);
      if (a != cplx(0.0, 0.0)) entries.push_back({na, nb, a});
    }
  const cplx alpha = pt.alpha(), beta = pt.beta();
  KahanAcc re, im;
  for (const Entry& ket : entries)
    for (const Entry& bra : entries) {
      const cplx term = ket.amp * std::conj(bra.amp) *
                        wigner_fock_cross(ket.na, bra.na, alpha) *
                        wigner_fock_cross(ket.nb, bra.nb, beta);
      re.add(term.real());
      im.add(term.imag());
    }
  if (std::abs(im.sum) > 1e-8)
    throw tmsv::numerical_error("wigner_numeric_oracle: imaginary residue exceeds 1e-8");
  return re.sum;
}

}  // namespace tmsv::wigner
