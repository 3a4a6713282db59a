#pragma once

// Transformations of Weyl functions that correspond to changing the boundary
// triplet or the self-adjoint extension, and multiplicity-level comparison
// of two extensions.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "weylkit/boundary.hpp"
#include "weylkit/nevanlinna.hpp"

namespace weylkit {

// M_B(z) = (B − F(z))⁻¹.
NevanlinnaFunction krein_transform(const NevanlinnaFunction& f, const HermitianMatrix& b);

// R* F(z) R + R0; R must be invertible (full rank at 1e−12).
NevanlinnaFunction conjugate(const NevanlinnaFunction& f, const ComplexMatrix& r,
                             const HermitianMatrix& r0);

struct Regularization {
  NevanlinnaFunction f;  // R⁻¹(F − Q)R⁻¹, equal to iI at z = i
  ComplexMatrix r;       // (Im F(i))^{1/2}
  HermitianMatrix q;     // Re F(i)
};

// Throws NotStrictError unless Im F(i) is positive definite.
Regularization regularize(const NevanlinnaFunction& f);

NevanlinnaFunction direct_sum(std::span<const NevanlinnaFunction> terms, bool auto_regularize);

// Θ = graph(B_op) on ℋ_op ⊕ {0} × ℋ_∞, with ℋ_op spanned by the orthonormal
// columns of op_basis and ℋ_∞ its orthogonal complement.
class SelfAdjointRelation {
 public:
  // Throws ValidationError unless op_basis has orthonormal columns (to 1e−10)
  // and B_op matches their count.
  SelfAdjointRelation(ComplexMatrix op_basis, HermitianMatrix b_op);

  static SelfAdjointRelation operator_graph(HermitianMatrix b);
  static SelfAdjointRelation purely_multivalued(std::size_t dim);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t op_dim() const { return basis_.cols(); }
  const ComplexMatrix& op_basis() const { return basis_; }
  const HermitianMatrix& b_op() const { return b_op_; }

 private:
  ComplexMatrix basis_;
  HermitianMatrix b_op_;
};

// π_op F π_op* in op_basis coordinates.
NevanlinnaFunction relation_project(const SelfAdjointRelation& theta, const NevanlinnaFunction& f);

enum class Verdict { kEquivalent, kFirstSubordinate, kSecondSubordinate, kIncomparable, kInconclusive };
std::string_view to_string(Verdict v);

struct ComparisonVerdict {
  Verdict relation = Verdict::kInconclusive;
  std::vector<double> grid;
  std::vector<int> d1, d2;
  std::vector<bool> converged1, converged2;
  std::vector<std::size_t> excluded;
};

// Verdict from two profiles on the same grid under grid "a.e." semantics:
// points excluded in either profile are skipped; any other unconverged point
// makes the result inconclusive.
Verdict classify_profiles(const MultiplicityProfile& p1, const MultiplicityProfile& p2);

// Compares the ac parts of two extensions at the level of multiplicity
// profiles. An empty optional stands for the reference extension A₀. Both
// relations must share the same ℋ_op (ValidationError otherwise); A₀ is then
// represented by the compressed function on that space. Throws
// NotStrictError if a relation is given and Im F(i) is singular there.
ComparisonVerdict compare_extensions(const NevanlinnaFunction& f,
                                     const std::optional<SelfAdjointRelation>& theta1,
                                     const std::optional<SelfAdjointRelation>& theta2, double a,
                                     double b, std::size_t grid_points,
                                     const ProfileConfig& cfg = {});

struct AcMinimality {
  bool minimal = false;
  std::vector<Verdict> verdicts;  // A₀ against each sampled B
};

// A₀ is ac-minimal on the window if it is equivalent or subordinate to
// A_B for every sampled B. Inconclusive comparisons count against it.
AcMinimality is_ac_minimal(const NevanlinnaFunction& f, std::span<const HermitianMatrix> bs,
                           double a, double b, std::size_t grid_points,
                           const ProfileConfig& cfg = {});

}  // namespace weylkit
