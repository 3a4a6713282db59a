#include "weylkit/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/errors.hpp"
#include "weylkit/parallel.hpp"
#include "weylkit/spectral.hpp"

namespace weylkit {

namespace {

bool near_singular(const std::vector<double>& sing, double t, double eps) {
  auto it = std::lower_bound(sing.begin(), sing.end(), t - eps);
  return it != sing.end() && *it <= t + eps;
}

void require_ascending(std::span<const double> grid) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k])) throw ValidationError("grid: points must be finite");
    if (k > 0 && !(grid[k - 1] < grid[k]))
      throw ValidationError("grid: points must be strictly ascending");
  }
}

void require_samples(std::span<const double> ys) {
  if (ys.empty()) throw ValidationError("y samples: need at least one value");
  for (double y : ys)
    if (!(y > 0.0 && y <= 1.0)) throw ValidationError("y samples must lie in (0, 1]");
}

}  // namespace

void validate(const LimitConfig& cfg) {
  if (!(cfg.y0 > 0.0) || !std::isfinite(cfg.y0)) throw ValidationError("y0 must be positive");
  if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0)) throw ValidationError("ratio must lie in (0, 1)");
  if (!(cfg.limit_tol > 0.0)) throw ValidationError("limit_tol must be positive");
  if (cfg.max_steps < 1) throw ValidationError("max_steps must be at least 1");
}

void validate(const ProfileConfig& cfg) {
  validate(cfg.limit);
  if (!(cfg.rank_tol > 0.0 && cfg.rank_tol < 1.0))
    throw ValidationError("rank_tol must lie in (0, 1)");
  if (!(cfg.excl_eps >= 0.0)) throw ValidationError("excl_eps must be non-negative");
}

BoundaryLimit boundary_limit(const NevanlinnaFunction& f, double t, const LimitConfig& cfg) {
  validate(cfg);
  BoundaryLimit out;
  out.t = t;
  ComplexMatrix prev;
  double y = cfg.y0;
  try {
    for (int k = 0; k <= cfg.max_steps; ++k, y *= cfg.ratio) {
      ComplexMatrix cur = f(Complex{t, y});
      if (!cur.all_finite()) break;
      out.y_used.push_back(y);
      if (k > 0) {
        out.last_delta = (cur - prev).norm_fro() / (1.0 + cur.norm_fro());
        if (out.last_delta <= cfg.limit_tol) {
          // F(t + iy) ≈ L + c·y: cancel the linear term
          out.value = (cur - prev * cfg.ratio) * (1.0 / (1.0 - cfg.ratio));
          out.converged = true;
          break;
        }
      }
      prev = std::move(cur);
    }
  } catch (const NumericalError&) {
  }
  if (!out.converged) out.value = prev;
  if (out.converged && cfg.cross_check) {
    if (auto exact = closed_form_boundary(f, t))
      out.closed_form_residual = (out.value - *exact).norm_fro();
  }
  return out;
}

bool MultiplicityProfile::is_excluded(std::size_t k) const {
  return std::binary_search(excluded.begin(), excluded.end(), k);
}

int boundary_multiplicity(const ComplexMatrix& limit, double rank_tol) {
  return static_cast<int>(
      rank_eps(HermitianMatrix::imag_part(limit).matrix(), rank_tol, 1.0 + norm2(limit)));
}

MultiplicityProfile multiplicity_profile(const NevanlinnaFunction& f, std::span<const double> grid,
                                         const ProfileConfig& cfg) {
  validate(cfg);
  require_ascending(grid);
  const auto sing = f.singular_points();
  MultiplicityProfile p;
  p.grid.assign(grid.begin(), grid.end());
  p.d.assign(grid.size(), -1);
  std::vector<char> conv(grid.size(), 0), excl(grid.size(), 0);
  for (std::size_t k = 0; k < grid.size(); ++k)
    excl[k] = near_singular(sing, grid[k], cfg.excl_eps) ? 1 : 0;
  parallel_for(grid.size(), resolve_threads(cfg.threads), [&](std::size_t k) {
    if (excl[k]) return;
    const auto lim = boundary_limit(f, grid[k], cfg.limit);
    if (!lim.converged) return;
    conv[k] = 1;
    p.d[k] = boundary_multiplicity(lim.value, cfg.rank_tol);
  });
  p.converged.assign(conv.begin(), conv.end());
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (excl[k]) p.excluded.push_back(k);
  return p;
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw ValidationError("window must be a finite [a, b] with a < b");
  if (n < 2) throw ValidationError("grid needs at least 2 points");
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k)
    g[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  g.back() = b;
  return g;
}

IntervalSet ac_spectrum_from_profile(const MultiplicityProfile& p) {
  std::vector<Interval> cells;
  const auto positive = [&](std::size_t k) { return p.converged[k] && p.d[k] > 0; };
  for (std::size_t k = 0; k + 1 < p.grid.size(); ++k)
    if (positive(k) || positive(k + 1)) cells.push_back({p.grid[k], p.grid[k + 1], true, true});
  if (cells.empty()) return {};
  const auto window = IntervalSet::closed(p.grid.front(), p.grid.back());
  return IntervalSet::from_intervals(cells).closure_ac().intersect(window);
}

IntervalSet ac_spectrum(const NevanlinnaFunction& f, double a, double b, std::size_t grid_points,
                        const ProfileConfig& cfg) {
  const auto grid = uniform_grid(a, b, grid_points);
  return ac_spectrum_from_profile(multiplicity_profile(f, grid, cfg));
}

StieltjesInversion stieltjes_invert(const NevanlinnaFunction& f, std::span<const double> grid,
                                    const ProfileConfig& cfg) {
  validate(cfg);
  require_ascending(grid);
  if (grid.size() < 2) throw ValidationError("stieltjes_invert: grid needs at least 2 points");
  const auto sing = f.singular_points();
  const std::size_t cells = grid.size() - 1;
  std::vector<std::optional<HermitianMatrix>> dens(cells);
  parallel_for(cells, resolve_threads(cfg.threads), [&](std::size_t k) {
    const double mid = 0.5 * (grid[k] + grid[k + 1]);
    if (near_singular(sing, mid, cfg.excl_eps)) return;
    const auto lim = boundary_limit(f, mid, cfg.limit);
    if (!lim.converged) return;
    // clip round-off negativity so the result is a valid measure
    const auto dec = eigh(HermitianMatrix::imag_part(lim.value));
    dens[k] = hermitian_function(dec, [](double x) { return std::max(x, 0.0) / M_PI; });
  });
  StieltjesInversion out;
  std::vector<AcPiece> pieces;
  for (std::size_t k = 0; k < cells; ++k) {
    if (dens[k]) {
      pieces.push_back({grid[k], grid[k + 1], std::move(*dens[k])});
    } else {
      out.omitted_cells.push_back(k);
    }
  }
  out.density = OperatorMeasure(f.dim(), {}, std::move(pieces));
  return out;
}

double max_normal(const NevanlinnaFunction& f, double t, std::span<const double> ys) {
  require_samples(ys);
  double best = 0.0;
  for (double y : ys) best = std::max(best, norm2(f(Complex{t, y})));
  return best;
}

double invariant_max_normal(const NevanlinnaFunction& f, double t, std::span<const double> ys) {
  require_samples(ys);
  const ComplexMatrix fi = f(Complex{0.0, 1.0});
  const auto re = HermitianMatrix::real_part(fi);
  const auto im = HermitianMatrix::imag_part(fi);
  const auto dec = eigh(im);
  const double scale = std::max(1.0, im.matrix().norm_max());
  if (!dec.eigenvalues.empty() && dec.eigenvalues.front() <= 1e-12 * scale)
    throw NotStrictError("invariant_max_normal: Im F(i) is not positive definite");
  const auto w = hermitian_function(dec, [](double x) { return 1.0 / std::sqrt(x); }).matrix();
  double best = 0.0;
  for (double y : ys) best = std::max(best, norm2(w * (f(Complex{t, y}) - re.matrix()) * w));
  return best;
}

}  // namespace weylkit
