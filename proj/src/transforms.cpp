#include "weylkit/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/errors.hpp"
#include "weylkit/spectral.hpp"

namespace weylkit {

NevanlinnaFunction krein_transform(const NevanlinnaFunction& f, const HermitianMatrix& b) {
  return NevanlinnaFunction::krein_transform(b, f);
}

NevanlinnaFunction conjugate(const NevanlinnaFunction& f, const ComplexMatrix& r,
                             const HermitianMatrix& r0) {
  return NevanlinnaFunction::conjugation(r, r0, f);
}

Regularization regularize(const NevanlinnaFunction& f) {
  const ComplexMatrix fi = f(Complex{0.0, 1.0});
  const auto q = HermitianMatrix::real_part(fi);
  const auto dec = eigh(HermitianMatrix::imag_part(fi));
  const double scale = std::max(1.0, dec.eigenvalues.empty() ? 0.0 : dec.eigenvalues.back());
  if (!dec.eigenvalues.empty() && dec.eigenvalues.front() <= 1e-12 * scale)
    throw NotStrictError("regularize: Im F(i) is not positive definite");
  const auto r = hermitian_function(dec, [](double x) { return std::sqrt(x); });
  const ComplexMatrix rinv =
      hermitian_function(dec, [](double x) { return 1.0 / std::sqrt(x); }).matrix();
  const auto shift = HermitianMatrix::real_part(-(rinv * q.matrix() * rinv));
  return {NevanlinnaFunction::conjugation(rinv, shift, f), r.matrix(), q};
}

NevanlinnaFunction direct_sum(std::span<const NevanlinnaFunction> terms, bool auto_regularize) {
  std::vector<NevanlinnaFunction> parts;
  parts.reserve(terms.size());
  for (const auto& t : terms) parts.push_back(auto_regularize ? regularize(t).f : t);
  return NevanlinnaFunction::direct_sum(std::move(parts));
}

SelfAdjointRelation::SelfAdjointRelation(ComplexMatrix op_basis, HermitianMatrix b_op)
    : basis_(std::move(op_basis)), b_op_(std::move(b_op)) {
  if (basis_.cols() > basis_.rows())
    throw ValidationError("relation: op_basis has more columns than rows");
  if (b_op_.dim() != basis_.cols())
    throw ValidationError("relation: B_op size must equal the number of op_basis columns");
  const auto gram = basis_.adjoint() * basis_ - ComplexMatrix::identity(basis_.cols());
  if (gram.norm_max() > 1e-10) throw ValidationError("relation: op_basis is not orthonormal");
}

SelfAdjointRelation SelfAdjointRelation::operator_graph(HermitianMatrix b) {
  const std::size_t n = b.dim();
  return SelfAdjointRelation(ComplexMatrix::identity(n), std::move(b));
}

SelfAdjointRelation SelfAdjointRelation::purely_multivalued(std::size_t dim) {
  return SelfAdjointRelation(ComplexMatrix(dim, 0), HermitianMatrix::zero(0));
}

NevanlinnaFunction relation_project(const SelfAdjointRelation& theta, const NevanlinnaFunction& f) {
  if (theta.dim() != f.dim()) throw ValidationError("relation_project: dimension mismatch");
  return NevanlinnaFunction::sandwich(theta.op_basis(), f);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kEquivalent: return "equivalent";
    case Verdict::kFirstSubordinate: return "first-subordinate";
    case Verdict::kSecondSubordinate: return "second-subordinate";
    case Verdict::kIncomparable: return "incomparable";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

ComplexMatrix projector(const ComplexMatrix& u) { return u * u.adjoint(); }

// Weyl function of A_Θ expressed on the shared op space with basis u.
NevanlinnaFunction extension_function(const NevanlinnaFunction& compressed,
                                      const std::optional<SelfAdjointRelation>& theta,
                                      const ComplexMatrix& u) {
  if (!theta) return compressed;
  const ComplexMatrix w = u.adjoint() * theta->op_basis();
  const auto b = HermitianMatrix::real_part(w * theta->b_op().matrix() * w.adjoint());
  return NevanlinnaFunction::krein_transform(b, compressed);
}

}  // namespace

Verdict classify_profiles(const MultiplicityProfile& p1, const MultiplicityProfile& p2) {
  if (p1.grid != p2.grid) throw ValidationError("classify_profiles: grids differ");
  bool le = true, ge = true;
  for (std::size_t k = 0; k < p1.grid.size(); ++k) {
    if (p1.is_excluded(k) || p2.is_excluded(k)) continue;
    if (!p1.converged[k] || !p2.converged[k]) return Verdict::kInconclusive;
    le = le && p1.d[k] <= p2.d[k];
    ge = ge && p1.d[k] >= p2.d[k];
  }
  return le && ge ? Verdict::kEquivalent
         : le     ? Verdict::kFirstSubordinate
         : ge     ? Verdict::kSecondSubordinate
                  : Verdict::kIncomparable;
}

ComparisonVerdict compare_extensions(const NevanlinnaFunction& f,
                                     const std::optional<SelfAdjointRelation>& theta1,
                                     const std::optional<SelfAdjointRelation>& theta2, double a,
                                     double b, std::size_t grid_points, const ProfileConfig& cfg) {
  for (const auto* th : {&theta1, &theta2})
    if (*th && (*th)->dim() != f.dim())
      throw ValidationError("compare_extensions: relation dimension differs from F");
  ComplexMatrix u = ComplexMatrix::identity(f.dim());
  if (theta1) u = theta1->op_basis();
  else if (theta2) u = theta2->op_basis();
  if (theta1 && theta2 &&
      (projector(theta1->op_basis()) - projector(theta2->op_basis())).norm_max() > 1e-10)
    throw ValidationError("compare_extensions: relations have different operator parts");

  const auto compressed = NevanlinnaFunction::sandwich(u, f);
  if (theta1 || theta2) {
    const double lo = min_eigenvalue(HermitianMatrix::imag_part(compressed(Complex{0.0, 1.0})));
    if (compressed.dim() > 0 && lo <= 1e-12)
      throw NotStrictError("compare_extensions: F is not strict on the operator part");
  }
  const auto f1 = extension_function(compressed, theta1, u);
  const auto f2 = extension_function(compressed, theta2, u);
  const auto grid = uniform_grid(a, b, grid_points);
  const auto p1 = multiplicity_profile(f1, grid, cfg);
  const auto p2 = multiplicity_profile(f2, grid, cfg);

  ComparisonVerdict out;
  out.grid = grid;
  out.d1 = p1.d;
  out.d2 = p2.d;
  out.converged1 = p1.converged;
  out.converged2 = p2.converged;
  std::set_union(p1.excluded.begin(), p1.excluded.end(), p2.excluded.begin(), p2.excluded.end(),
                 std::back_inserter(out.excluded));
  out.relation = classify_profiles(p1, p2);
  return out;
}

AcMinimality is_ac_minimal(const NevanlinnaFunction& f, std::span<const HermitianMatrix> bs,
                           double a, double b, std::size_t grid_points, const ProfileConfig& cfg) {
  AcMinimality out;
  out.minimal = true;
  for (const auto& bk : bs) {
    const auto v = compare_extensions(f, std::nullopt, SelfAdjointRelation::operator_graph(bk), a,
                                      b, grid_points, cfg)
                       .relation;
    out.verdicts.push_back(v);
    out.minimal = out.minimal && (v == Verdict::kEquivalent || v == Verdict::kFirstSubordinate);
  }
  return out;
}

}  // namespace weylkit
