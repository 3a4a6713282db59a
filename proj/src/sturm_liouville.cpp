#include "weylkit/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/errors.hpp"
#include "weylkit/operator_measure.hpp"

namespace weylkit {

namespace {

constexpr Complex kI{0.0, 1.0};

double lift(double lambda) { return lambda + std::hypot(1.0, lambda); }  // λ + √(1+λ²)

}  // namespace

SLModel::SLModel(HermitianMatrix t) : t_(std::move(t)), spectrum_(eigh(t_)) {
  const double floor = -kPsdTol * std::max(1.0, t_.matrix().norm_max());
  if (!spectrum_.eigenvalues.empty() && spectrum_.eigenvalues.front() < floor)
    throw ValidationError("SL model: T must be positive semidefinite");
  t0_ = spectrum_.eigenvalues.empty() ? 0.0 : std::max(0.0, spectrum_.eigenvalues.front());
}

NevanlinnaFunction weyl(const SLModel& m) { return NevanlinnaFunction::sqrt_model(m.t()); }
NevanlinnaFunction regularized_weyl(const SLModel& m) {
  return NevanlinnaFunction::regularized_sqrt(m.t());
}
NevanlinnaFunction krein_weyl(const SLModel& m) { return NevanlinnaFunction::krein_sl(m.t()); }
NevanlinnaFunction neumann_weyl(const SLModel& m) { return NevanlinnaFunction::neumann_sl(m.t()); }

GammaGram gamma_gram(const SLModel& m, Complex z, Complex zeta) {
  if (!(z.imag() > 0.0 && zeta.imag() > 0.0))
    throw DomainError("gamma_gram: z and zeta must lie in the upper half-plane");
  std::vector<Complex> g;
  for (double raw : m.spectrum().eigenvalues) {
    const double l = std::max(raw, 0.0);
    g.push_back(kI / (std::sqrt(z - l) - std::conj(std::sqrt(zeta - l))));
  }
  GammaGram out{m.spectrum().synthesize(g), 0.0};
  const auto f = weyl(m);
  out.residual = (f(z) - f(zeta).adjoint() - out.gram * (z - std::conj(zeta))).norm_fro();
  return out;
}

HermitianMatrix krein_parameter(const SLModel& m) {
  return hermitian_function(m.spectrum(), [](double raw) {
    const double l = std::max(raw, 0.0), s = std::sqrt(lift(l));
    return 1.0 / ((std::sqrt(2.0) * std::sqrt(l) + s) * s);
  });
}

SqrtShift re_im_sqrt_shift(const SLModel& m) {
  const auto& dec = m.spectrum();
  SqrtShift out{
      hermitian_function(dec, [](double raw) { return 1.0 / std::sqrt(2.0 * lift(std::max(raw, 0.0))); }),
      hermitian_function(dec, [](double raw) { return std::sqrt(lift(std::max(raw, 0.0)) / 2.0); }),
      0.0};
  const auto direct = matrix_function(dec, [](double raw) {
    return std::sqrt(Complex{-std::max(raw, 0.0), 1.0});
  });
  out.residual = (out.re.matrix() + out.im.matrix() * kI - direct).norm_fro();
  return out;
}

NormalBoundReport normal_bound_check(std::span<const double> grid, std::span<const double> ys,
                                     const NormalSampler& sampler) {
  NormalBoundReport r;
  r.grid.assign(grid.begin(), grid.end());
  r.worst_slack = HUGE_VAL;
  for (double t : grid) {
    const double s = sampler(t, ys), bound = 2.0 * std::pow(1.0 + t * t, 0.25);
    r.samples.push_back(s);
    r.bounds.push_back(bound);
    r.worst_slack = std::min(r.worst_slack, bound - s);
    r.max_ratio = std::max(r.max_ratio, s / bound);
    if (!(s <= bound)) ++r.violations;
  }
  if (grid.empty()) r.worst_slack = 0.0;
  return r;
}

NormalBoundReport normal_bound_check(const SLModel& m, std::span<const double> grid,
                                     std::span<const double> ys) {
  const auto f = weyl(m);
  return normal_bound_check(grid, ys, [&](double t, std::span<const double> y) {
    return invariant_max_normal(f, t, y);
  });
}

FriedrichsProfile friedrichs_profile(const SLModel& m, double a, double b, std::size_t grid_points,
                                     const ProfileConfig& cfg) {
  const auto grid = uniform_grid(a, b, grid_points);
  auto profile = multiplicity_profile(weyl(m), grid, cfg);
  auto ac = ac_spectrum_from_profile(profile);
  return {std::move(ac), std::move(profile)};
}

}  // namespace weylkit
