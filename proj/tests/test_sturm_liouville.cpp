#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "weylkit/errors.hpp"
#include "weylkit/sturm_liouville.hpp"
#include "weylkit/transforms.hpp"

using namespace weylkit;
using namespace weylkit::testing;

namespace {

const Complex kI{0.0, 1.0};

HermitianMatrix diag(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return HermitianMatrix::diagonal(v);
}

HermitianMatrix block(const HermitianMatrix& a, const HermitianMatrix& b) {
  const ComplexMatrix parts[] = {a.matrix(), b.matrix()};
  return HermitianMatrix(block_diagonal(parts));
}

int count_below(const std::vector<double>& eig, double t) {
  return static_cast<int>(std::count_if(eig.begin(), eig.end(), [&](double l) { return l < t; }));
}

}  // namespace

TEST_CASE("model validation") {
  CHECK_THROWS_AS(SLModel(diag({1, -0.5})), ValidationError);
  CHECK(SLModel(diag({3, 1})).t0() == 1.0);
  CHECK(SLModel(diag({-1e-13, 2})).t0() == 0.0);
}

TEST_CASE("weyl examples") {
  const auto m0 = weyl(SLModel(HermitianMatrix::zero(1)));
  CHECK(std::abs(m0(4.0 * kI)(0, 0) - Complex{-std::sqrt(2.0), std::sqrt(2.0)}) < 1e-14);

  const auto lim = boundary_limit(weyl(SLModel(diag({1, 4}))), 2.0);
  REQUIRE(lim.converged);
  CHECK(residual(lim.value, ComplexMatrix(2, 2, {kI, 0.0, 0.0, -std::sqrt(2.0)})) < 1e-8);

  Rng rng(61);
  const auto f = weyl(SLModel(random_psd(rng, 4)));
  for (int k = 0; k < 50; ++k)
    CHECK(min_eigenvalue(HermitianMatrix::imag_part(f(random_upper(rng)))) >= -1e-10);
}

TEST_CASE("gamma_gram examples") {
  const SLModel zero(HermitianMatrix::zero(1));
  CHECK(gamma_gram(zero, kI, kI).residual <= 1e-12);
  const SLModel m(diag({1, 4}));
  CHECK(gamma_gram(m, {1, 1}, {2, 3}).residual <= 1e-10);
  const auto self = gamma_gram(m, {0.5, 0.7}, {0.5, 0.7});
  CHECK(min_eigenvalue(HermitianMatrix(self.gram, 1e-12)) >= -1e-12);
  CHECK_THROWS_AS(gamma_gram(m, {1, -1}, kI), DomainError);
}

TEST_CASE("gamma_gram identity on random data") {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const SLModel m(random_psd(rng, 1 + trial % 8, 0.0, 6.0));
    const Complex z = random_upper(rng), zeta = random_upper(rng);
    CHECK(gamma_gram(m, z, zeta).residual <= 1e-10);
    // the Gram matrix of one family is PSD
    const auto g = gamma_gram(m, z, z).gram;
    CHECK(min_eigenvalue(HermitianMatrix::real_part(g)) >= -1e-12);
  }
}

TEST_CASE("krein_weyl boundary values") {
  const SLModel m(diag({1, 4}));
  const auto lim = boundary_limit(krein_weyl(m), 2.0);
  REQUIRE(lim.converged);
  CHECK(residual(HermitianMatrix::imag_part(lim.value).matrix(), diag({0.5, 0}).matrix()) < 1e-8);

  // Im M_K(t + i0) = t⁻¹ √(t − T) E_T([0, t))
  Rng rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    const SLModel r(random_psd(rng, 3, 0.0, 5.0));
    for (double t : {0.6, 2.2, 4.1, 7.0}) {
      const auto l = boundary_limit(krein_weyl(r), t);
      if (!l.converged) continue;
      const auto want = hermitian_function(r.spectrum(), [t](double x) {
        return x < t ? std::sqrt(t - x) / t : 0.0;
      });
      CHECK(residual(HermitianMatrix::imag_part(l.value).matrix(), want.matrix()) < 1e-7);
    }
  }
  CHECK_THROWS_AS(krein_weyl(m)(0.0), PoleError);
}

TEST_CASE("neumann_weyl examples") {
  const auto lim = boundary_limit(neumann_weyl(SLModel(HermitianMatrix::zero(1))), 4.0);
  REQUIRE(lim.converged);
  CHECK(std::abs(lim.value(0, 0) - 0.5 * kI) < 1e-8);

  const SLModel m(diag({1, 4}));
  const std::vector<double> grid{2, 5};
  CHECK(multiplicity_profile(neumann_weyl(m), grid).d == std::vector<int>{1, 2});
  const std::vector<double> below{-3, 0.2, 0.9};
  CHECK(multiplicity_profile(neumann_weyl(m), below).d == std::vector<int>{0, 0, 0});
}

TEST_CASE("profiles of the three extensions agree above t0") {
  Rng rng(64);
  for (int trial = 0; trial < 8; ++trial) {
    const SLModel m(random_psd(rng, 1 + trial % 4, 0.2, 5.0));
    const auto grid = uniform_grid(m.t0() + 0.013, m.t0() + 10, 60);
    const auto pf = multiplicity_profile(weyl(m), grid);
    const auto pk = multiplicity_profile(krein_weyl(m), grid);
    const auto pn = multiplicity_profile(neumann_weyl(m), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!pf.converged[k] || !pk.converged[k] || !pn.converged[k]) continue;
      CHECK(pf.d[k] == pk.d[k]);
      CHECK(pf.d[k] == pn.d[k]);
      CHECK(pf.d[k] == count_below(m.spectrum().eigenvalues, grid[k]));
    }
  }
}

TEST_CASE("krein_parameter examples") {
  CHECK(krein_parameter(SLModel(HermitianMatrix::zero(1)))(0, 0).real() == doctest::Approx(1.0));
  const double s = std::sqrt(3.0 + std::sqrt(10.0));
  const auto bk = krein_parameter(SLModel(diag({0, 3})));
  CHECK(residual(bk.matrix(), diag({1.0, 1.0 / ((std::sqrt(6.0) + s) * s)}).matrix()) < 1e-14);
}

TEST_CASE("krein_parameter matches the regularized value at 0") {
  // M(−x) = −√(T + x) → −√T; in regularized coordinates this is B^K.
  const SLModel m(HermitianMatrix::identity(2));
  const auto reg = regularize(weyl(m));
  const auto lim = boundary_limit(weyl(m), -1e-9);
  REQUIRE(lim.converged);
  CHECK(residual(lim.value, HermitianMatrix::identity(2).matrix() * -1.0) < 1e-8);
  const auto rinv = inverse(reg.r);
  const auto at_zero = rinv * (lim.value - reg.q.matrix()) * rinv;
  CHECK(residual(at_zero, krein_parameter(m).matrix()) < 1e-8);

  Rng rng(65);
  for (int trial = 0; trial < 5; ++trial) {
    const SLModel r(random_psd(rng, 3, 0.0, 4.0));
    const auto closed = closed_form_boundary(regularized_weyl(r), 0.0);
    REQUIRE(closed.has_value());
    CHECK(residual(*closed, krein_parameter(r).matrix()) < 1e-12);
  }
}

TEST_CASE("Krein parameter reproduces the Krein profile") {
  Rng rng(66);
  for (int trial = 0; trial < 5; ++trial) {
    const SLModel m(random_psd(rng, 1 + trial % 3, 0.3, 4.0));
    const auto via_b = krein_transform(regularized_weyl(m), krein_parameter(m));
    const auto grid = uniform_grid(m.t0() + 0.01, m.t0() + 10, 50);
    const auto pb = multiplicity_profile(via_b, grid);
    const auto pk = multiplicity_profile(krein_weyl(m), grid);
    for (std::size_t k = 0; k < grid.size(); ++k)
      if (pb.converged[k] && pk.converged[k]) CHECK(pb.d[k] == pk.d[k]);
  }
}

TEST_CASE("re_im_sqrt_shift") {
  const auto s0 = re_im_sqrt_shift(SLModel(HermitianMatrix::zero(1)));
  CHECK(s0.re(0, 0).real() == doctest::Approx(M_SQRT1_2));
  CHECK(s0.im(0, 0).real() == doctest::Approx(M_SQRT1_2));
  const auto s3 = re_im_sqrt_shift(SLModel(diag({3})));
  CHECK(s3.re(0, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0 * (3.0 + std::sqrt(10.0)))));
  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = re_im_sqrt_shift(SLModel(random_psd(rng, 1 + trial % 6, 0.0, 20.0)));
    CHECK(s.residual <= 1e-10);
    CHECK(min_eigenvalue(s.re) > 0.0);
    CHECK(min_eigenvalue(s.im) > 0.0);
  }
}

TEST_CASE("normal_bound_check") {
  const std::vector<double> ys{1.0, 0.1, 0.01};
  const SLModel zero(HermitianMatrix::zero(1));
  const std::vector<double> at0{0.0};
  const auto r0 = normal_bound_check(zero, at0, ys);
  CHECK(r0.bounds[0] == doctest::Approx(2.0));
  CHECK(r0.passed());
  const std::vector<double> at10{10.0};
  CHECK(normal_bound_check(zero, at10, ys).bounds[0] == doctest::Approx(2.0 * std::pow(101.0, 0.25)));

  const auto grid = uniform_grid(-10, 10, 41);
  CHECK(normal_bound_check(zero, grid, ys).passed());

  // negative control: the wrong branch −i√(z − T), normalized by the true M(i)
  const std::vector<double> one{1.0};
  const auto flipped = [](double t, std::span<const double> y) {
    double best = 0.0;
    for (double v : y) {
      const Complex q = std::sqrt(Complex{0.0, 1.0});
      best = std::max(best, std::abs((-kI * std::sqrt(Complex{t, v}) + q.imag()) / q.real()));
    }
    return best;
  };
  const auto bad = normal_bound_check(at0, one, flipped);
  CHECK_FALSE(bad.passed());
  CHECK(bad.samples[0] == doctest::Approx(std::sqrt(5.0)));

  // with eigenvalues at 1 and 4 the sampled values exceed the bound
  const auto hi = normal_bound_check(SLModel(diag({1, 4})), uniform_grid(0, 11, 50), ys);
  CHECK(hi.violations > 0);
  CHECK(hi.max_ratio > 1.0);
}

TEST_CASE("friedrichs_profile examples") {
  const auto fp = friedrichs_profile(SLModel(diag({1, 4})), 0, 6, 601);
  CHECK(fp.ac_spectrum == IntervalSet::closed(1, 6));
  for (std::size_t k = 0; k < fp.profile.grid.size(); ++k) {
    if (fp.profile.is_excluded(k)) continue;
    const double t = fp.profile.grid[k];
    CHECK(fp.profile.d[k] == (t < 1 ? 0 : t < 4 ? 1 : 2));
  }
  const auto f0 = friedrichs_profile(SLModel(HermitianMatrix::zero(1)), 0, 6, 61);
  CHECK(f0.ac_spectrum == IntervalSet::closed(0, 6));
  for (std::size_t k = 1; k < f0.profile.grid.size(); ++k) CHECK(f0.profile.d[k] == 1);
  CHECK(friedrichs_profile(SLModel(diag({5})), 0, 4, 41).ac_spectrum.empty());
}

TEST_CASE("weyl function of a block-diagonal potential is the direct sum") {
  Rng rng(68);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t1 = random_psd(rng, 2), t2 = random_psd(rng, 3);
    const auto whole = weyl(SLModel(block(t1, t2)));
    const auto sum = NevanlinnaFunction::direct_sum({weyl(SLModel(t1)), weyl(SLModel(t2))});
    for (int k = 0; k < 10; ++k) {
      const Complex z = random_upper(rng);
      CHECK(residual(whole(z), sum(z)) <= 1e-12 * std::max(1.0, sum(z).norm_fro()));
    }
  }
}
