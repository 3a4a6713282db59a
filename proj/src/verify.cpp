#include "weylkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "weylkit/boundary.hpp"
#include "weylkit/errors.hpp"
#include "weylkit/spectral.hpp"
#include "weylkit/sturm_liouville.hpp"
#include "weylkit/transforms.hpp"

namespace weylkit {

namespace {

using Rng = std::mt19937_64;
constexpr Complex kI{0.0, 1.0};

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ComplexMatrix random_matrix(Rng& rng, std::size_t n, std::size_t m) {
  ComplexMatrix a(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)};
  return a;
}

HermitianMatrix random_hermitian(Rng& rng, std::size_t n) {
  return HermitianMatrix::real_part(random_matrix(rng, n, n));
}

HermitianMatrix random_psd(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> eig(n);
  for (auto& e : eig) e = uniform(rng, lo, hi);
  const auto u = eigh(random_hermitian(rng, n)).eigenvectors;
  return HermitianMatrix::real_part(u * ComplexMatrix::diagonal(eig) * u.adjoint());
}

Complex random_upper(Rng& rng) { return {uniform(rng, -5, 5), uniform(rng, 1e-2, 5)}; }

void record(SuiteResult& r, double residual, double tol) {
  ++r.checks;
  if (!(residual <= tol)) ++r.failures;
  if (std::isnan(residual) || residual > r.max_residual) r.max_residual = residual;
}

bool is_sqrt_leaf(const NevanlinnaFunction& f) {
  return std::holds_alternative<SqrtFamilyModel>(f.node().payload);
}

SuiteResult herglotz(const VerifyOptions& opts) {
  SuiteResult r{"herglotz"};
  auto zoo = model_zoo();
  if (opts.extra_model) zoo.emplace_back("scene", *opts.extra_model);
  Rng rng(101);
  for (const auto& [name, f] : zoo) {
    const double sign = opts.branch_flip && is_sqrt_leaf(f) ? -1.0 : 1.0;
    for (int k = 0; k < 200; ++k) {
      const Complex z = random_upper(rng);
      const ComplexMatrix up = f(z) * sign, down = f(std::conj(z)) * sign;
      const double neg = std::max(0.0, -min_eigenvalue(HermitianMatrix::imag_part(up)));
      const double sym = (up - down.adjoint()).norm_fro();
      record(r, std::max(neg, sym), 1e-10);
    }
  }
  return r;
}

SuiteResult gamma_identity() {
  SuiteResult r{"gamma_identity"};
  Rng rng(102);
  for (int k = 0; k < 50; ++k) {
    const SLModel m(random_psd(rng, 1 + k % 8, 0.0, 6.0));
    record(r, gamma_gram(m, random_upper(rng), random_upper(rng)).residual, 1e-10);
  }
  return r;
}

SuiteResult closed_forms() {
  SuiteResult r{"closed_forms"};
  Rng rng(103);
  for (int k = 0; k < 20; ++k) {
    const SLModel m(random_psd(rng, 1 + k % 6, 0.0, 10.0));
    record(r, re_im_sqrt_shift(m).residual, 1e-10);
    const Complex z = random_upper(rng);
    record(r, (regularize(weyl(m)).f(z) - regularized_weyl(m)(z)).norm_fro(), 1e-9);
    const auto at_zero = closed_form_boundary(regularized_weyl(m), 0.0);
    record(r, (*at_zero - krein_parameter(m).matrix()).norm_fro(), 1e-10);
  }
  return r;
}

SuiteResult direct_sum_laws(const VerifyOptions& opts) {
  SuiteResult r{"direct_sum"};
  Rng rng(104);
  ProfileConfig cfg;
  cfg.threads = opts.threads;
  const auto grid = uniform_grid(-1.0, 10.0, 45);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<NevanlinnaFunction> terms;
    const int count = 2 + trial;
    for (int k = 0; k < count; ++k)
      terms.push_back(NevanlinnaFunction::sqrt_model(random_psd(rng, 1 + k % 2, 0.0, 8.0)));
    const auto sum = direct_sum(terms, true);
    record(r, (sum(kI) - ComplexMatrix::identity(sum.dim()) * kI).norm_fro(), 1e-9);

    const auto whole = multiplicity_profile(sum, grid, cfg);
    std::vector<MultiplicityProfile> parts;
    for (const auto& t : terms) parts.push_back(multiplicity_profile(t, grid, cfg));
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (whole.d[g] < 0) continue;
      int total = 0;
      bool usable = true;
      for (const auto& p : parts) {
        usable = usable && p.d[g] >= 0;
        total += p.d[g];
      }
      if (usable) record(r, std::abs(total - whole.d[g]), 0.0);
    }
  }
  return r;
}

SuiteResult ac_lemmas() {
  SuiteResult r{"ac_lemmas"};
  Rng rng(105);
  for (int k = 0; k < 200; ++k) {
    const auto a = random_interval_set(rng);
    std::vector<IntervalSet> parts(1 + k % 5);
    for (auto& p : parts) p = random_interval_set(rng, 6);
    const auto rep = verify_ac_lemmas(a, parts);
    record(r, rep.leftover_measure, 0.0);
    record(r, rep.union_law_holds ? 0.0 : 1.0, 0.0);
  }
  return r;
}

SuiteResult friedrichs_spectrum(const VerifyOptions& opts) {
  SuiteResult r{"friedrichs_spectrum"};
  Rng rng(106);
  std::vector<HermitianMatrix> ts{HermitianMatrix::diagonal(std::vector<double>{1, 4})};
  for (int k = 0; k < 3; ++k) ts.push_back(random_psd(rng, 1 + k, 0.0, 5.0));
  ProfileConfig cfg;
  cfg.threads = opts.threads;
  for (const auto& t : ts) {
    const SLModel m(t);
    const double a = m.t0() - 1.0, b = m.t0() + 10.0;
    const std::size_t n = 221;
    const double h = (b - a) / (n - 1);
    const auto fp = friedrichs_profile(m, a, b, n, cfg);
    const auto& iv = fp.ac_spectrum.intervals();
    const bool shape = iv.size() == 1 && iv[0].b == b && iv[0].closed_left && iv[0].closed_right;
    record(r, shape ? std::abs(iv[0].a - m.t0()) : HUGE_VAL, h);
    const auto& eig = m.spectrum().eigenvalues;
    for (std::size_t k = 0; k < n; ++k) {
      if (fp.profile.is_excluded(k)) continue;
      const double t_k = fp.profile.grid[k];
      const int want = static_cast<int>(std::count_if(eig.begin(), eig.end(), [&](double l) { return l < t_k; }));
      record(r, std::abs(fp.profile.d[k] - want), 0.0);
    }
  }
  return r;
}

SuiteResult stieltjes_roundtrip(const VerifyOptions& opts) {
  SuiteResult r{"stieltjes_roundtrip"};
  const auto d = [](std::vector<Complex> e) { return HermitianMatrix(ComplexMatrix(2, 2, std::move(e))); };
  const OperatorMeasure sigma(2, {},
                              {{0.0, 1.0, d({1, 0, 0, 2})},
                               {1.0, 2.5, d({2, 0.5, 0.5, 1})},
                               {2.5, 3.0, d({0.5, 0, 0, 0})}});
  const auto f = NevanlinnaFunction::integral(HermitianMatrix::zero(2), HermitianMatrix::zero(2), sigma);
  ProfileConfig cfg;
  cfg.limit.y0 = 1e-3;
  cfg.threads = opts.threads;
  const auto inv = stieltjes_invert(f, uniform_grid(-0.5, 3.5, 401), cfg);
  double num = 0.0, den = 0.0;
  for (const auto& p : inv.density.pieces()) {
    const double h = p.b - p.a;
    const auto exact = sigma.evaluate(IntervalSet::half_open(p.a, p.b)).matrix() * (1.0 / h);
    num += (p.density.matrix() - exact).norm_fro() * h;
    den += exact.norm_fro() * h;
  }
  record(r, num / den, 1e-2);
  return r;
}

SuiteResult normal_bound(const VerifyOptions&) {
  SuiteResult r{"normal_bound"};
  const std::vector<double> ys{1.0, 0.1, 0.01};
  const auto rep = normal_bound_check(SLModel(HermitianMatrix::diagonal(std::vector<double>{1, 4})),
                                      uniform_grid(0.0, 11.0, 50), ys);
  for (std::size_t k = 0; k < rep.grid.size(); ++k) record(r, rep.samples[k] / rep.bounds[k], 1.0);
  return r;
}

}  // namespace

std::vector<std::pair<std::string, NevanlinnaFunction>> model_zoo(std::uint64_t seed) {
  Rng rng(seed);
  const auto t = random_psd(rng, 2, 0.0, 4.0);
  const auto sq = NevanlinnaFunction::sqrt_model(t);
  const auto d = [](std::vector<Complex> e) { return HermitianMatrix(ComplexMatrix(2, 2, std::move(e))); };
  const OperatorMeasure sigma(2, {{-1.0, d({1, 0.2, 0.2, 0.5})}, {2.0, d({0, 0, 0, 1})}},
                              {{0.0, 1.5, d({1, 0, 0, 0.5})}});
  const auto integral = NevanlinnaFunction::integral(random_hermitian(rng, 2), d({0.3, 0, 0, 0}), sigma);
  const SLModel m(t);

  std::vector<std::pair<std::string, NevanlinnaFunction>> zoo{
      {"integral", integral},
      {"sqrt", sq},
      {"reg_sqrt", NevanlinnaFunction::regularized_sqrt(t)},
      {"krein_sl", NevanlinnaFunction::krein_sl(t)},
      {"neumann_sl", NevanlinnaFunction::neumann_sl(t)},
      {"krein", NevanlinnaFunction::krein_transform(random_hermitian(rng, 2), sq)},
      {"conj", NevanlinnaFunction::conjugation(random_matrix(rng, 2, 2) + ComplexMatrix::identity(2) * 2.0,
                                               random_hermitian(rng, 2), integral)},
      {"sandwich", NevanlinnaFunction::sandwich(random_matrix(rng, 3, 2),
                                                NevanlinnaFunction::direct_sum(
                                                    {sq, NevanlinnaFunction::neumann_sl(HermitianMatrix::identity(1))}))},
      {"sum", NevanlinnaFunction::direct_sum({sq, integral})},
      {"sl:friedrichs", weyl(m)},
      {"sl:krein", krein_weyl(m)},
      {"sl:neumann", neumann_weyl(m)},
      {"sl:regularized", regularized_weyl(m)},
  };
  return zoo;
}

IntervalSet random_interval_set(std::mt19937_64& rng, int max_components) {
  std::uniform_int_distribution<int> count(0, max_components), lattice(-20, 20), length(1, 8),
      coin(0, 1), kind(0, 4);
  std::vector<Interval> parts;
  const int n = count(rng);
  for (int k = 0; k < n; ++k) {
    const double a = lattice(rng) * 0.5;
    if (kind(rng) == 0) {
      parts.push_back({a, a, true, true});
      continue;
    }
    const double b = a + length(rng) * 0.5;
    parts.push_back({a, b, coin(rng) == 1, coin(rng) == 1});
  }
  return IntervalSet::from_intervals(parts);
}

const std::vector<std::string>& default_suites() {
  static const std::vector<std::string> names{"herglotz",   "gamma_identity",      "closed_forms",
                                              "direct_sum", "ac_lemmas",           "friedrichs_spectrum",
                                              "stieltjes_roundtrip"};
  return names;
}

const std::vector<std::string>& available_suites() {
  static const std::vector<std::string> names = [] {
    auto all = default_suites();
    all.push_back("normal_bound");
    return all;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "herglotz") return herglotz(opts);
  if (name == "gamma_identity") return gamma_identity();
  if (name == "closed_forms") return closed_forms();
  if (name == "direct_sum") return direct_sum_laws(opts);
  if (name == "ac_lemmas") return ac_lemmas();
  if (name == "friedrichs_spectrum") return friedrichs_spectrum(opts);
  if (name == "stieltjes_roundtrip") return stieltjes_roundtrip(opts);
  if (name == "normal_bound") return normal_bound(opts);
  throw ValidationError("unknown verification suite '" + name + "'");
}

}  // namespace weylkit
