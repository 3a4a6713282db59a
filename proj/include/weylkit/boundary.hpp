#pragma once

// Boundary behaviour of Nevanlinna functions on the real axis: limits
// F(t + i0), pointwise multiplicity d(t) = rank Im F(t + i0), the
// absolutely continuous spectrum, Stieltjes inversion and maximal normal
// functions.

#include <optional>
#include <span>
#include <vector>

#include "weylkit/interval_set.hpp"
#include "weylkit/nevanlinna.hpp"
#include "weylkit/operator_measure.hpp"

namespace weylkit {

struct LimitConfig {
  double y0 = 1e-2;
  double ratio = 0.5;
  double limit_tol = 1e-7;
  int max_steps = 40;
  bool cross_check = false;  // compare with closed_form_boundary when available
};

// value is the Richardson-extrapolated limit of the last two samples when
// converged, otherwise the last finite sample. last_delta is the final
// successive difference divided by (1 + ‖F_k‖).
struct BoundaryLimit {
  double t = 0.0;
  ComplexMatrix value;
  bool converged = false;
  double last_delta = 0.0;
  std::vector<double> y_used;
  std::optional<double> closed_form_residual;
};

// Throws ValidationError for y0 ≤ 0, ratio ∉ (0,1), limit_tol ≤ 0 or
// max_steps < 1. Evaluation failures end the scan as "not converged".
BoundaryLimit boundary_limit(const NevanlinnaFunction& f, double t, const LimitConfig& cfg = {});

struct ProfileConfig {
  LimitConfig limit;
  double rank_tol = 1e-8;
  double excl_eps = 1e-6;
  unsigned threads = 0;  // 0: WEYLKIT_THREADS or hardware concurrency
};

void validate(const LimitConfig& cfg);
void validate(const ProfileConfig& cfg);

// d[k] = −1 where the limit did not converge or grid[k] is excluded.
struct MultiplicityProfile {
  std::vector<double> grid;
  std::vector<int> d;
  std::vector<bool> converged;
  std::vector<std::size_t> excluded;

  bool is_excluded(std::size_t k) const;
};

// Rank of Im L relative to max(σ_max(Im L), 1 + ‖L‖₂); the floor keeps
// round-off from counting where L itself happens to vanish.
int boundary_multiplicity(const ComplexMatrix& limit, double rank_tol);

MultiplicityProfile multiplicity_profile(const NevanlinnaFunction& f, std::span<const double> grid,
                                         const ProfileConfig& cfg = {});

// n ≥ 2 equispaced points on [a, b], computed as a + (b − a)·k/(n − 1).
std::vector<double> uniform_grid(double a, double b, std::size_t n);

// Union of grid cells with a converged endpoint of positive multiplicity,
// closed under cl_ac and clipped to [grid.front(), grid.back()].
IntervalSet ac_spectrum_from_profile(const MultiplicityProfile& profile);

IntervalSet ac_spectrum(const NevanlinnaFunction& f, double a, double b, std::size_t grid_points,
                        const ProfileConfig& cfg = {});

struct StieltjesInversion {
  OperatorMeasure density;                 // one piece per accepted cell
  std::vector<std::size_t> omitted_cells;  // cell k is [grid[k], grid[k+1])
};

// Density Im F(m + i0)/π at each cell midpoint m.
StieltjesInversion stieltjes_invert(const NevanlinnaFunction& f, std::span<const double> grid,
                                    const ProfileConfig& cfg = {});

// Finite-sample maxima over y ∈ ys ⊂ (0, 1]; lower bounds of the suprema.
double max_normal(const NevanlinnaFunction& f, double t, std::span<const double> ys);
// Uses ‖Im F(i)^{−1/2}(F(t + iy) − Re F(i)) Im F(i)^{−1/2}‖₂; throws
// NotStrictError if Im F(i) is not positive definite.
double invariant_max_normal(const NevanlinnaFunction& f, double t, std::span<const double> ys);

}  // namespace weylkit
