#pragma once

// Operator-valued measures on the real line with finitely many PSD atoms and
// a piecewise-constant PSD matrix density, together with their multiplicity
// functions and the subordination/equivalence predicates built on them.

#include <cstddef>
#include <vector>

#include "weylkit/interval_set.hpp"
#include "weylkit/matrix.hpp"

namespace weylkit {

struct Atom {
  double position = 0.0;
  HermitianMatrix weight;
};

// Constant density on [a, b). Endpoints may be infinite (e.g. a Lebesgue
// multiple on the whole line) as long as the density is finite.
struct AcPiece {
  double a = 0.0;
  double b = 0.0;
  HermitianMatrix density;
};

constexpr double kPsdTol = 1e-10;

class OperatorMeasure {
 public:
  explicit OperatorMeasure(std::size_t dim = 0) : dim_(dim) {}
  // Throws ValidationError unless atoms are strictly increasing, pieces are
  // sorted, disjoint and non-empty, and every matrix is PSD of size dim.
  OperatorMeasure(std::size_t dim, std::vector<Atom> atoms, std::vector<AcPiece> pieces);

  static OperatorMeasure atom(double position, HermitianMatrix weight);
  static OperatorMeasure density(double a, double b, HermitianMatrix density);

  std::size_t dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<AcPiece>& pieces() const { return pieces_; }
  bool empty() const { return atoms_.empty() && pieces_.empty(); }

  // Σ(δ): atoms inside δ plus density × |δ ∩ piece|. Throws DomainError if a
  // piece has infinite overlap with δ.
  HermitianMatrix evaluate(const IntervalSet& delta) const;

  // Closed set of atom positions with nonzero weight, and the union of pieces
  // with nonzero density (at rank tolerance tol).
  std::vector<double> atom_support(double tol = 1e-8) const;
  IntervalSet ac_support(double tol = 1e-8) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Atom> atoms_;
  std::vector<AcPiece> pieces_;
};

// Lebesgue decomposition: (absolutely continuous part, pure point part).
struct LebesgueParts {
  OperatorMeasure ac;
  OperatorMeasure pp;
};
LebesgueParts lebesgue_decompose(const OperatorMeasure& sigma);

// Piecewise-constant non-negative integer function; value[k] holds on
// [breakpoints[k], breakpoints[k+1]) and the function vanishes elsewhere.
// Canonical: no two adjacent pieces share a value, no zero piece at either end.
struct MultiplicityFunctionTable {
  std::vector<double> breakpoints;
  std::vector<int> values;

  int value_at(double t) const;
  friend bool operator==(const MultiplicityFunctionTable&,
                         const MultiplicityFunctionTable&) = default;
};

MultiplicityFunctionTable ac_multiplicity(const OperatorMeasure& sigma, double tol = 1e-8);

bool is_subordinate(const OperatorMeasure& s1, const OperatorMeasure& s2, double tol = 1e-8);
bool spectrally_subordinate(const OperatorMeasure& s1, const OperatorMeasure& s2,
                            double tol = 1e-8);
bool spectrally_equivalent(const OperatorMeasure& s1, const OperatorMeasure& s2,
                           double tol = 1e-8);

}  // namespace weylkit
