#pragma once

// Matrix-valued Nevanlinna (Herglotz, R-) functions as immutable expression
// trees. Leaves are closed-form models; inner nodes compose them. Evaluation is
// defined off the real axis: leaves implement both half-planes so that
// F(conj z) = F(z)* can be checked rather than assumed.

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "weylkit/matrix.hpp"
#include "weylkit/operator_measure.hpp"
#include "weylkit/spectral.hpp"

namespace weylkit {

enum class NodeKind {
  kIntegral,         // C0 + C1 z + ∫ (1/(t−z) − t/(1+t²)) dΣ(t)
  kSqrt,             // i√(z−T)
  kRegularizedSqrt,  // (i√(z−T) + Im√(i−T)) · Re√(i−T)⁻¹
  kKreinSL,          // (i√(z−T) − √T)/z
  kNeumannSL,        // i(z−T)^{−1/2}
  kKreinTransform,   // (B − F(z))⁻¹
  kConjugation,      // R* F(z) R + R0
  kSandwich,         // D* F(z) D
  kDirectSum,        // ⊕ F_k(z)
};

std::string_view to_string(NodeKind k);

struct NevanlinnaNode;

class NevanlinnaFunction {
 public:
  static NevanlinnaFunction integral(HermitianMatrix c0, HermitianMatrix c1, OperatorMeasure sigma);
  static NevanlinnaFunction sqrt_model(HermitianMatrix t);
  static NevanlinnaFunction regularized_sqrt(HermitianMatrix t);
  static NevanlinnaFunction krein_sl(HermitianMatrix t);
  static NevanlinnaFunction neumann_sl(HermitianMatrix t);
  // B − F(z) must be invertible off the axis. An IntegralModel inner whose
  // imaginary part has a common kernel for all z is rejected (NotStrictError).
  static NevanlinnaFunction krein_transform(HermitianMatrix b, NevanlinnaFunction inner);
  // R is inner.dim × inner.dim and invertible; R0 Hermitian of the same size.
  static NevanlinnaFunction conjugation(ComplexMatrix r, HermitianMatrix r0,
                                        NevanlinnaFunction inner);
  // D is inner.dim × k with trivial kernel (k may be smaller than inner.dim,
  // including 0); the result has dimension k.
  static NevanlinnaFunction sandwich(ComplexMatrix d, NevanlinnaFunction inner);
  static NevanlinnaFunction direct_sum(std::vector<NevanlinnaFunction> terms);

  std::size_t dim() const;
  NodeKind kind() const;
  const NevanlinnaNode& node() const { return *node_; }

  // Throws DomainError for real z (PoleError for a Krein SL leaf at z = 0),
  // IllConditionedError from Krein transforms.
  ComplexMatrix operator()(Complex z) const;

  // Real points where boundary values are known to be singular or
  // non-smooth: eigenvalues of T, atom positions, piece endpoints, 0 for the
  // Krein SL model. Sorted, unique.
  std::vector<double> singular_points() const;

 private:
  static NevanlinnaFunction sqrt_family(NodeKind kind, HermitianMatrix t);
  explicit NevanlinnaFunction(std::shared_ptr<const NevanlinnaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const NevanlinnaNode> node_;
};

struct IntegralModel {
  HermitianMatrix c0;
  HermitianMatrix c1;
  OperatorMeasure sigma;
};

// All four Sturm–Liouville type leaves are functions of one PSD matrix T.
struct SqrtFamilyModel {
  NodeKind kind;
  HermitianMatrix t;
  SpectralDecomposition spectrum;
};

struct KreinTransformNode {
  HermitianMatrix b;
  NevanlinnaFunction inner;
};

struct ConjugationNode {
  ComplexMatrix r;
  HermitianMatrix r0;
  NevanlinnaFunction inner;
};

struct SandwichNode {
  ComplexMatrix d;
  NevanlinnaFunction inner;
};

struct DirectSumNode {
  std::vector<NevanlinnaFunction> terms;
};

struct NevanlinnaNode {
  std::size_t dim = 0;
  std::variant<IntegralModel, SqrtFamilyModel, KreinTransformNode, ConjugationNode, SandwichNode,
               DirectSumNode>
      payload;
};

inline ComplexMatrix evaluate(const NevanlinnaFunction& f, Complex z) { return f(z); }

// ‖F(z) − F(conj z)*‖_F with both sides evaluated by the models themselves.
double symmetry_check(const NevanlinnaFunction& f, Complex z);

// Sandwich with a square D of trivial kernel and cokernel (checked by
// rank_eps at 1e−12); throws ValidationError otherwise.
NevanlinnaFunction sandwich(const NevanlinnaFunction& f, const ComplexMatrix& d);

// Closed-form value F(t + i0) for square-root family leaves, using the branch
// √(x + i0) = i√|x| for x < 0. Empty for other nodes or at points where the
// limit does not exist (t = 0 for the Krein model, t ∈ σ(T) for Neumann).
std::optional<ComplexMatrix> closed_form_boundary(const NevanlinnaFunction& f, double t);

// Principal square root continued from the upper half-plane onto the real
// axis: √(x + i0).
Complex sqrt_from_above(double x);

}  // namespace weylkit
