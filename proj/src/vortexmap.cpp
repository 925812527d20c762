#include "tmsv/vortexmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tmsv/parallel.hpp"

namespace tmsv::vortexmap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double d) {
  while (d > std::numbers::pi) d -= kTwoPi;
  while (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

int to_integer_winding(double circulation) {
  const double w = circulation / kTwoPi;
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 1e-6)
    throw numerical_error("winding_number: circulation is not an integer multiple of 2pi");
  return static_cast<int>(rounded);
}

// The Gaussian factor never vanishes and is single-valued, so it contributes
// exactly zero to any closed-loop winding; detection therefore runs on the
// polynomial factor alone, which cannot underflow far from the origin.
std::complex<double> poly_value(const states::PolyGauss& pg, double x, double y) {
  return pg.poly_at(x, y);
}

struct SweepResult {
  std::vector<Singularity> singularities;
  int total = 0;
  int boundary = 0;
};

// One plaquette sweep over an evaluation lattice offset from `grid` by
// (off_x, off_y).  Returns nullopt-like failure via thrown numerical_error
// when a lattice sample sits on a zero.
SweepResult plaquette_sweep(const states::PolyGauss& pg, const GridSpec& grid, double off_x,
                            double off_y) {
  const std::size_t nx = grid.nx, ny = grid.ny;
  std::vector<double> phase(nx * ny);
  std::vector<double> magnitude(nx * ny);
  parallel_for(static_cast<std::int64_t>(ny), [&](std::int64_t iy) {
    const double y = grid.y(static_cast<std::size_t>(iy)) + off_y;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const auto v = poly_value(pg, grid.x(ix) + off_x, y);
      phase[static_cast<std::size_t>(iy) * nx + ix] = std::arg(v);
      magnitude[static_cast<std::size_t>(iy) * nx + ix] = std::abs(v);
    }
  });
  double scale = 0.0;
  for (double m : magnitude) scale = std::max(scale, m);
  if (scale <= 0.0) throw numerical_error("locate_singularities: field vanishes identically");
  for (double m : magnitude)
    if (m < 1e-14 * scale)
      throw numerical_error("locate_singularities: lattice sample on a zero; perturb");

  // shared edge arrays: ex(i,j) = wrap(phase(i+1,j)-phase(i,j)),
  //                     ey(i,j) = wrap(phase(i,j+1)-phase(i,j))
  std::vector<double> ex((nx - 1) * ny), ey(nx * (ny - 1));
  parallel_for(static_cast<std::int64_t>(ny), [&](std::int64_t j) {
    for (std::size_t i = 0; i + 1 < nx; ++i)
      ex[static_cast<std::size_t>(j) * (nx - 1) + i] =
          wrap_phase(phase[static_cast<std::size_t>(j) * nx + i + 1] -
                     phase[static_cast<std::size_t>(j) * nx + i]);
  });
  parallel_for(static_cast<std::int64_t>(ny - 1), [&](std::int64_t j) {
    for (std::size_t i = 0; i < nx; ++i)
      ey[static_cast<std::size_t>(j) * nx + i] =
          wrap_phase(phase[(static_cast<std::size_t>(j) + 1) * nx + i] -
                     phase[static_cast<std::size_t>(j) * nx + i]);
  });

  // counterclockwise cell circulation; whole-row partial results keep the
  // aggregation order deterministic
  std::vector<std::vector<Singularity>> per_row(ny - 1);
  std::vector<int> row_total(ny - 1, 0);
  parallel_for(static_cast<std::int64_t>(ny - 1), [&](std::int64_t j) {
    const auto uj = static_cast<std::size_t>(j);
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double circ = ex[uj * (nx - 1) + i] + ey[uj * nx + i + 1] -
                          ex[(uj + 1) * (nx - 1) + i] - ey[uj * nx + i];
      const int w = to_integer_winding(circ);
      if (w != 0) {
        Singularity s;
        s.location = {0.5 * (grid.x(i) + grid.x(i + 1)) + off_x,
                      0.5 * (grid.y(uj) + grid.y(uj + 1)) + off_y};
        s.charge = w;
        per_row[uj].push_back(s);
        row_total[uj] += w;
      }
    }
  });

  SweepResult out;
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    out.total += row_total[j];
    out.singularities.insert(out.singularities.end(), per_row[j].begin(), per_row[j].end());
  }
  // boundary winding from the same edges (telescopes to the cell-sum exactly)
  double boundary = 0.0;
  for (std::size_t i = 0; i + 1 < nx; ++i) boundary += ex[i];                      // bottom, ->
  for (std::size_t j = 0; j + 1 < ny; ++j) boundary += ey[j * nx + (nx - 1)];      // right, ^
  for (std::size_t i = 0; i + 1 < nx; ++i) boundary -= ex[(ny - 1) * (nx - 1) + i];  // top, <-
  for (std::size_t j = 0; j + 1 < ny; ++j) boundary -= ey[j * nx];                 // left, v
  out.boundary = to_integer_winding(boundary);
  return out;
}

SweepResult robust_sweep(const states::PolyGauss& pg, const GridSpec& grid) {
  // nudge the evaluation lattice off exact zeros if needed (sub-cell shifts)
  const double shifts[] = {0.0, 0.37, 0.11, -0.23};
  for (double s : shifts) {
    try {
      return plaquette_sweep(pg, grid, s * grid.dx(), s * grid.dy());
    } catch (const numerical_error&) {
      if (s == shifts[3]) throw;
    }
  }
  throw numerical_error("locate_singularities: could not avoid on-lattice zeros");
}

bool stable(const SweepResult& coarse, const SweepResult& fine, double match_dist) {
  if (coarse.singularities.size() != fine.singularities.size()) return false;
  if (coarse.total != fine.total) return false;
  for (const auto& s : coarse.singularities) {
    bool found = false;
    for (const auto& t : fine.singularities) {
      if (t.charge == s.charge && std::abs(t.location.x - s.location.x) <= match_dist &&
          std::abs(t.location.y - s.location.y) <= match_dist) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

int winding_number(const std::vector<std::complex<double>>& samples) {
  if (samples.size() < 3)
    throw std::invalid_argument("winding_number: need at least 3 contour samples");
  for (const auto& z : samples)
    if (std::abs(z) <= 1e-14)
      throw numerical_error("winding_number: zero-crossing on contour; perturb the contour");
  double circ = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& a = samples[i];
    const auto& b = samples[(i + 1) % samples.size()];
    circ += wrap_phase(std::arg(b) - std::arg(a));
  }
  return to_integer_winding(circ);
}

int winding_number(const Field2D<std::complex<double>>& field,
                   const std::vector<std::pair<std::size_t, std::size_t>>& loop) {
  std::vector<std::complex<double>> samples;
  samples.reserve(loop.size());
  for (const auto& [ix, iy] : loop) samples.push_back(field.at(ix, iy));
  return winding_number(samples);
}

ChargeResult locate_singularities(const states::PolyGauss& pg, const GridSpec& grid) {
  grid.validate();
  ChargeResult result;
  result.final_grid = grid;

  // real eta (theta = 0 mod pi, or r = 0) with photons removed: the zero set
  // is a full line, not a point vortex; winding is undefined there
  if (pg.degree >= 1 && std::abs(std::imag(pg.eta)) < 1e-12) {
    result.non_vortex_zero_manifold = true;
    return result;
  }
  if (pg.degree == 0) return result;  // constant polynomial: no zeros anywhere

  GridSpec g = grid;
  SweepResult cur = robust_sweep(pg, g);
  for (int doubling = 0; doubling < 4; ++doubling) {
    GridSpec fine = g.refined2x();
    SweepResult next = robust_sweep(pg, fine);
    if (stable(cur, next, std::max(g.dx(), g.dy()))) {
      result.singularities = next.singularities;
      result.total_charge = next.total;
      result.boundary_charge = next.boundary;
      result.refinements = doubling + 1;
      result.final_grid = fine;
      return result;
    }
    g = fine;
    cur = next;
  }
  throw numerical_error("locate_singularities: singularity set not stable after 4 doublings");
}

double zero_bound_radius(const states::PolyGauss& pg) {
  const int k = pg.degree;
  if (k == 0) return 1.0;
  // min of the leading form |sum_{i+j=k} c_ij x^i y^j| on the unit circle
  double lead_min = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 720; ++s) {
    const double phi = kTwoPi * s / 720.0;
    std::complex<double> lead = 0.0;
    for (int i = 0; i <= k; ++i)
      lead += pg.c(i, k - i) * std::pow(std::cos(phi), i) * std::pow(std::sin(phi), k - i);
    lead_min = std::min(lead_min, std::abs(lead));
  }
  if (!(lead_min > 0.0))
    throw numerical_error("zero_bound_radius: leading form vanishes on the circle");
  double lower = 0.0;  // sum of lower-order coefficient magnitudes
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j + i < k; ++j) lower += std::abs(pg.c(i, j));
  // for R >= 1: |P| >= lead_min R^k - lower R^{k-1} > 0 once R > lower/lead_min
  return std::max(2.0, 1.5 * lower / lead_min + 1.0);
}

int total_charge(const states::PolyGauss& pg, double radius, int samples) {
  if (samples < 8) throw std::invalid_argument("total_charge: need at least 8 samples");
  if (pg.degree == 0) return 0;
  const double R = radius > 0.0 ? radius : zero_bound_radius(pg);
  std::vector<std::complex<double>> ring(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const double phi = kTwoPi * s / samples;
    ring[static_cast<std::size_t>(s)] = poly_value(pg, R * std::cos(phi), R * std::sin(phi));
  }
  return winding_number(ring);
}

}  // namespace tmsv::vortexmap
