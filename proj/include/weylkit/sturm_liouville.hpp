#pragma once

// Weyl functions and boundary parameters of −d²/dx² + T on the half-line
// with a PSD matrix potential T.

#include <functional>
#include <span>
#include <vector>

#include "weylkit/boundary.hpp"
#include "weylkit/nevanlinna.hpp"

namespace weylkit {

class SLModel {
 public:
  // Throws ValidationError unless T is PSD within 1e−10·max(1, ‖T‖).
  explicit SLModel(HermitianMatrix t);

  const HermitianMatrix& t() const { return t_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  double t0() const { return t0_; }  // bottom of σ(T)
  std::size_t dim() const { return t_.dim(); }

 private:
  HermitianMatrix t_;
  SpectralDecomposition spectrum_;
  double t0_ = 0.0;
};

NevanlinnaFunction weyl(const SLModel& m);              // Friedrichs: i√(z−T)
NevanlinnaFunction regularized_weyl(const SLModel& m);  // normalized to iI at z = i
NevanlinnaFunction krein_weyl(const SLModel& m);        // (i√(z−T) − √T)/z
NevanlinnaFunction neumann_weyl(const SLModel& m);      // i(z−T)^{−1/2}

struct GammaGram {
  ComplexMatrix gram;  // γ(ζ)*γ(z)
  double residual;     // ‖M(z) − M(ζ)* − (z − ζ̄)γ(ζ)*γ(z)‖_F
};

// Both points must lie in the upper half-plane (DomainError otherwise).
GammaGram gamma_gram(const SLModel& m, Complex z, Complex zeta);

// Boundary operator of the Krein extension in the regularized triplet.
HermitianMatrix krein_parameter(const SLModel& m);

struct SqrtShift {
  HermitianMatrix re;  // Re√(i−T), closed form
  HermitianMatrix im;  // Im√(i−T), closed form
  double residual;     // distance to √(i−T) by direct functional calculus
};
SqrtShift re_im_sqrt_shift(const SLModel& m);

struct NormalBoundReport {
  std::vector<double> grid;
  std::vector<double> samples;  // finite-sample maximal normal function
  std::vector<double> bounds;   // 2(1 + t²)^{1/4}
  double worst_slack = 0.0;     // min over t of bound − sample
  double max_ratio = 0.0;       // max over t of sample / bound
  std::size_t violations = 0;
  bool passed() const { return violations == 0; }
};

using NormalSampler = std::function<double(double t, std::span<const double> ys)>;

// Default sampler: invariant_max_normal of weyl(m).
NormalBoundReport normal_bound_check(const SLModel& m, std::span<const double> grid,
                                     std::span<const double> ys);
NormalBoundReport normal_bound_check(std::span<const double> grid, std::span<const double> ys,
                                     const NormalSampler& sampler);

struct FriedrichsProfile {
  IntervalSet ac_spectrum;
  MultiplicityProfile profile;
};
FriedrichsProfile friedrichs_profile(const SLModel& m, double a, double b, std::size_t grid_points,
                                     const ProfileConfig& cfg = {});

}  // namespace weylkit
