#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "weylkit/errors.hpp"
#include "weylkit/operator_measure.hpp"

using namespace weylkit;
using namespace weylkit::testing;

namespace {

HermitianMatrix diag(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return HermitianMatrix::diagonal(v);
}

HermitianMatrix conj_by(const ComplexMatrix& u, const HermitianMatrix& h) {
  return HermitianMatrix::real_part(u.adjoint() * h.matrix() * u);
}

OperatorMeasure conjugated(const OperatorMeasure& s, const ComplexMatrix& u) {
  std::vector<Atom> atoms;
  for (const auto& a : s.atoms()) atoms.push_back({a.position, conj_by(u, a.weight)});
  std::vector<AcPiece> pieces;
  for (const auto& p : s.pieces()) pieces.push_back({p.a, p.b, conj_by(u, p.density)});
  return OperatorMeasure(s.dim(), atoms, pieces);
}

OperatorMeasure mixed_measure() {
  return OperatorMeasure(2, {{-0.5, diag({1, 0})}, {1.5, diag({0.5, 2})}, {3.0, diag({1, 1})}},
                         {{-2.0, 0.0, diag({1, 2})}, {0.0, 1.0, diag({0, 3})},
                          {1.25, 2.5, diag({4, 1})}});
}

// Midpoint-rule integration of the density plus atom sweep; independent of
// the interval-intersection code path in evaluate().
ComplexMatrix integrate_oracle(const OperatorMeasure& s, double lo, double hi) {
  ComplexMatrix sum(s.dim(), s.dim());
  for (const auto& a : s.atoms())
    if (a.position >= lo && a.position < hi) sum += a.weight.matrix();
  const int n = 300000;
  const double h = (hi - lo) / n;
  for (int k = 0; k < n; ++k) {
    const double t = lo + (k + 0.5) * h;
    for (const auto& p : s.pieces())
      if (t >= p.a && t < p.b) sum += p.density.matrix() * Complex{h, 0.0};
  }
  return sum;
}

OperatorMeasure random_measure(Rng& rng, std::size_t dim) {
  std::vector<Atom> atoms;
  std::vector<AcPiece> pieces;
  double x = -3.0;
  std::uniform_int_distribution<int> rk(0, static_cast<int>(dim));
  for (int k = 0; k < 4; ++k) {
    x += uniform(rng, 0.1, 1.0);
    const int r = rk(rng);
    const auto g = random_matrix(rng, dim, static_cast<std::size_t>(r));
    pieces.push_back({x, x + uniform(rng, 0.1, 1.0), HermitianMatrix::real_part(g * g.adjoint())});
    x = pieces.back().b;
    if (k % 2 == 0) {
      const auto w = random_matrix(rng, dim, 1);
      atoms.push_back({x + 0.05, HermitianMatrix::real_part(w * w.adjoint())});
    }
  }
  return OperatorMeasure(dim, atoms, pieces);
}

}  // namespace

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(OperatorMeasure(1, {{1.0, diag({1})}, {0.0, diag({1})}}, {}), ValidationError);
  CHECK_THROWS_AS(OperatorMeasure(1, {}, {{0, 2, diag({1})}, {1, 3, diag({1})}}), ValidationError);
  CHECK_THROWS_AS(OperatorMeasure(1, {}, {{1, 1, diag({1})}}), ValidationError);
  CHECK_THROWS_AS(OperatorMeasure::atom(0.0, diag({1, -1})), ValidationError);
  CHECK_THROWS_AS(OperatorMeasure(2, {{0.0, diag({1})}}, {}), ValidationError);
}

TEST_CASE("lebesgue_decompose examples") {
  const auto atom = OperatorMeasure::atom(0.0, HermitianMatrix::identity(2));
  auto parts = lebesgue_decompose(atom);
  CHECK(parts.ac.empty());
  CHECK(parts.pp.atoms().size() == 1);

  const auto dens = OperatorMeasure::density(0.0, 1.0, HermitianMatrix::identity(2));
  parts = lebesgue_decompose(dens);
  CHECK(parts.pp.empty());
  CHECK(parts.ac.pieces().size() == 1);

  const auto mixed = mixed_measure();
  parts = lebesgue_decompose(mixed);
  const auto delta = IntervalSet::half_open(-1.0, 2.0);
  const auto total = mixed.evaluate(delta).matrix();
  const auto split = parts.ac.evaluate(delta).matrix() + parts.pp.evaluate(delta).matrix();
  CHECK(residual(total, split) < 1e-14);
  CHECK(residual(total, integrate_oracle(mixed, -1.0, 2.0)) < 1e-4);
}

TEST_CASE("evaluate_measure examples") {
  const auto atom = OperatorMeasure::atom(0.0, HermitianMatrix::identity(2));
  CHECK(residual(atom.evaluate(IntervalSet::half_open(-1, 1)).matrix(),
                 ComplexMatrix::identity(2)) == 0.0);
  const auto dens = OperatorMeasure::density(0.0, 2.0, HermitianMatrix::identity(1));
  CHECK(dens.evaluate(IntervalSet::half_open(0, 1))(0, 0).real() == doctest::Approx(1.0));

  const auto mixed = mixed_measure();
  const auto d1 = IntervalSet::half_open(-1.0, 0.5), d2 = IntervalSet::closed(1.5, 3.0);
  const auto whole = mixed.evaluate(d1.unite(d2)).matrix();
  const auto sum = mixed.evaluate(d1).matrix() + mixed.evaluate(d2).matrix();
  CHECK(residual(whole, sum) <= 1e-12);
}

TEST_CASE("unbounded pieces") {
  const auto leb = OperatorMeasure::density(-HUGE_VAL, HUGE_VAL, diag({1.0 / M_PI}));
  CHECK(leb.evaluate(IntervalSet::closed(0, 2))(0, 0).real() == doctest::Approx(2.0 / M_PI));
  CHECK_THROWS_AS(leb.evaluate(IntervalSet::real_line()), DomainError);
}

TEST_CASE("ac_multiplicity examples") {
  auto t = ac_multiplicity(OperatorMeasure::density(0, 1, diag({1, 0})));
  CHECK(t.breakpoints == std::vector<double>{0, 1});
  CHECK(t.values == std::vector<int>{1});
  CHECK(t.value_at(-0.5) == 0);
  CHECK(t.value_at(0.5) == 1);
  CHECK(t.value_at(1.0) == 0);

  const OperatorMeasure two(2, {}, {{0, 1, diag({1, 1})}, {1, 2, diag({1, 0})}});
  t = ac_multiplicity(two);
  CHECK(t.values == std::vector<int>{2, 1});
  CHECK(t.value_at(0.5) == 2);
  CHECK(t.value_at(1.5) == 1);
  CHECK(t.value_at(2.5) == 0);

  const double r = 1.0 / std::sqrt(2.0);
  const HermitianMatrix vv(ComplexMatrix(2, 2, {r * r, r * r, r * r, r * r}));
  CHECK(ac_multiplicity(OperatorMeasure::density(0, 1, vv)).values == std::vector<int>{1});
}

TEST_CASE("ac_multiplicity is canonical") {
  const OperatorMeasure m(1, {}, {{0, 1, diag({1})}, {1, 2, diag({2})}, {3, 4, diag({0})},
                                  {4, 5, diag({1})}});
  const auto t = ac_multiplicity(m);
  CHECK(t.breakpoints == std::vector<double>{0, 2, 4, 5});
  CHECK(t.values == std::vector<int>{1, 0, 1});
}

TEST_CASE("subordination examples") {
  const auto s = mixed_measure();
  CHECK(is_subordinate(s, s));
  CHECK(spectrally_subordinate(s, s));
  CHECK(spectrally_equivalent(s, s));

  const auto s1 = OperatorMeasure::density(0, 1, diag({1, 0}));
  const auto s2 = OperatorMeasure::density(0, 1, diag({1, 1}));
  CHECK(is_subordinate(s1, s2));
  CHECK(spectrally_subordinate(s1, s2));
  CHECK_FALSE(spectrally_equivalent(s1, s2));
  CHECK(is_subordinate(s2, s1));  // same support
  CHECK_FALSE(spectrally_subordinate(s2, s1));

  const auto a = OperatorMeasure::atom(0.0, HermitianMatrix::identity(1));
  const auto d = OperatorMeasure::density(0, 1, HermitianMatrix::identity(1));
  CHECK_FALSE(is_subordinate(a, d));
  CHECK(is_subordinate(d, OperatorMeasure::density(-1, 2, HermitianMatrix::identity(1))));
}

TEST_CASE("endpoint mismatches are null sets") {
  const OperatorMeasure a(1, {}, {{0, 1, diag({1})}, {1, 2, diag({1})}});
  const OperatorMeasure b(1, {}, {{0, 2, diag({3})}});
  CHECK(spectrally_equivalent(a, b));
}

TEST_CASE("measure properties on random data") {
  Rng rng(31);
  std::vector<OperatorMeasure> family;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 1 + trial % 4;
    const auto s = random_measure(rng, dim);
    // additivity over disjoint unions, monotonicity over inclusion
    const double c = uniform(rng, -2.0, 1.0);
    const auto d1 = IntervalSet::half_open(-4.0, c), d2 = IntervalSet::half_open(c, 6.0);
    const auto whole = s.evaluate(d1.unite(d2)).matrix();
    CHECK(residual(whole, s.evaluate(d1).matrix() + s.evaluate(d2).matrix()) <= 1e-12);
    const auto inner = IntervalSet::closed(c - 0.5, c + 0.5);
    const auto gap = HermitianMatrix::real_part(s.evaluate(d1.unite(d2)).matrix() -
                                                s.evaluate(inner).matrix());
    CHECK(min_eigenvalue(gap) >= -1e-10);
    // rank invariance under unitary conjugation
    const auto u = random_unitary(rng, dim);
    CHECK(ac_multiplicity(conjugated(s, u)) == ac_multiplicity(s));
    CHECK(spectrally_equivalent(conjugated(s, u), s));
    if (dim == 2) family.push_back(s);
  }
  // equivalence relation / transitivity on the generated family
  for (const auto& a : family)
    for (const auto& b : family)
      for (const auto& c : family) {
        if (spectrally_equivalent(a, b) && spectrally_equivalent(b, c))
          CHECK(spectrally_equivalent(a, c));
        if (spectrally_subordinate(a, b) && spectrally_subordinate(b, c))
          CHECK(spectrally_subordinate(a, c));
      }
  for (const auto& a : family) CHECK(spectrally_equivalent(a, a));
}

TEST_CASE("subordination chain built by restriction") {
  // Restricting supports and ranks yields a subordinate chain.
  const OperatorMeasure big(2, {{3.0, diag({1, 1})}}, {{0, 2, diag({1, 1})}});
  const OperatorMeasure mid(2, {{3.0, diag({1, 0})}}, {{0, 2, diag({1, 0})}});
  const OperatorMeasure small(2, {}, {{0.5, 1, diag({0, 1})}});
  CHECK(spectrally_subordinate(small, mid));
  CHECK(spectrally_subordinate(mid, big));
  CHECK(spectrally_subordinate(small, big));
  CHECK_FALSE(spectrally_subordinate(big, mid));
}
