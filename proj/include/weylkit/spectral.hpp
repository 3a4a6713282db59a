#pragma once

// Hermitian eigendecomposition (cyclic Jacobi), functional calculus,
// spectral projections and tolerant rank.

#include <functional>
#include <vector>

#include "weylkit/interval_set.hpp"
#include "weylkit/matrix.hpp"

namespace weylkit {

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary; column k pairs with eigenvalues[k]

  std::size_t dim() const { return eigenvalues.size(); }
  // U diag(values) U*
  ComplexMatrix synthesize(std::span<const Complex> values) const;
};

struct JacobiOptions {
  int max_sweeps = 100;
};

// Cyclic Jacobi with a fixed (row-major) pivot order, so results are
// reproducible bit for bit. Throws ConvergenceError after max_sweeps.
SpectralDecomposition eigh(const HermitianMatrix& h, JacobiOptions opts = {});

using ScalarFunction = std::function<Complex(double)>;

// U f(Λ) U*. Throws DomainError naming the eigenvalue if f is not finite there.
ComplexMatrix matrix_function(const SpectralDecomposition& s, const ScalarFunction& f);
ComplexMatrix matrix_function(const HermitianMatrix& h, const ScalarFunction& f);

// Convenience for real-valued f: result re-wrapped as Hermitian.
HermitianMatrix hermitian_function(const SpectralDecomposition& s,
                                   const std::function<double(double)>& f);

// E_H(δ): sum of eigenprojections whose eigenvalue lies in δ (exact membership
// test on the stored eigenvalue).
HermitianMatrix spectral_projection(const HermitianMatrix& h, const IntervalSet& delta);
HermitianMatrix spectral_projection(const SpectralDecomposition& s, const IntervalSet& delta);

// Singular values, descending (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& m);

double norm2(const ComplexMatrix& m);

constexpr double kDefaultRankTol = 1e-8;

// Number of singular values above tol·max(σ_max, scale). With scale = 0 this
// is the plain relative rank; a positive scale lets callers measure a matrix
// against a reference magnitude (e.g. Im F against ‖F‖).
std::size_t rank_eps(const ComplexMatrix& m, double tol = kDefaultRankTol, double scale = 0.0);

double min_eigenvalue(const HermitianMatrix& h);

}  // namespace weylkit
