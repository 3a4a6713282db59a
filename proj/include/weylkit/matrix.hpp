#pragma once

// Dense complex matrices for small boundary spaces (dimension up to a few
// dozen). Storage is row-major.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace weylkit {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Throws ValidationError if the entry count is wrong or an entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> d);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  std::vector<Complex> column(std::size_t j) const;
  bool all_finite() const;

  double norm_max() const;
  double norm_fro() const;
  double norm_1() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(ComplexMatrix a);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks);

// Gaussian elimination with partial pivoting. Throws IllConditionedError when
// the 1-norm condition number exceeds cond_limit (or the matrix is singular).
ComplexMatrix inverse(const ComplexMatrix& a, double cond_limit = 1e12);

// Self-adjoint matrix stored in exactly symmetrized form (H + H*)/2.
class HermitianMatrix {
 public:
  static constexpr double kDefaultTol = 1e-12;

  HermitianMatrix() = default;
  // Throws ValidationError unless square, finite and ‖H − H*‖_max ≤ tol.
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = kDefaultTol);

  // (M + M*)/2 and (M − M*)/(2i); no hermiticity check needed.
  static HermitianMatrix real_part(const ComplexMatrix& m);
  static HermitianMatrix imag_part(const ComplexMatrix& m);
  static HermitianMatrix diagonal(std::span<const double> d);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zero(std::size_t n);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted);
  ComplexMatrix m_;
};

}  // namespace weylkit
