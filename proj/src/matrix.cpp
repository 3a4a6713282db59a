#include "weylkit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "weylkit/errors.hpp"

namespace weylkit {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols();
    throw ValidationError(os.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    std::ostringstream os;
    os << "matrix: expected " << rows_ * cols_ << " entries, got " << data_.size();
    throw ValidationError(os.str());
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!finite(data_[k])) {
      std::ostringstream os;
      os << "matrix: non-finite entry at (" << k / std::max<std::size_t>(cols_, 1) << ","
         << k % std::max<std::size_t>(cols_, 1) << ")";
      throw ValidationError(os.str());
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
  std::vector<Complex> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), finite);
}

double ComplexMatrix::norm_max() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

double ComplexMatrix::norm_fro() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

double ComplexMatrix::norm_1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& c : data_) c *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "operator*: inner dimensions differ (" << a.cols() << " vs " << b.rows() << ")";
    throw ValidationError(os.str());
  }
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator-(ComplexMatrix a) {
  for (auto& c : a.data_) c = -c;
  return a;
}

ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix r(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) r(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return r;
}

ComplexMatrix inverse(const ComplexMatrix& a, double cond_limit) {
  if (!a.is_square()) throw ValidationError("inverse: matrix is not square");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (best == 0.0) throw IllConditionedError("inverse: matrix is singular");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    }
    const Complex d = 1.0 / lu(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      lu(k, j) *= d;
      inv(k, j) *= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Complex f = lu(i, k);
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        lu(i, j) -= f * lu(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  const double cond = a.norm_1() * inv.norm_1();
  if (!std::isfinite(cond) || cond > cond_limit) {
    std::ostringstream os;
    os << "inverse: condition number " << cond << " exceeds " << cond_limit;
    throw IllConditionedError(os.str());
  }
  return inv;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw ValidationError("hermitian: matrix is not square");
  if (!m.all_finite()) throw ValidationError("hermitian: non-finite entry");
  const double skew = (m - m.adjoint()).norm_max();
  if (skew > tol) {
    std::ostringstream os;
    os << "hermitian: ‖H − H*‖_max = " << skew << " exceeds tolerance " << tol;
    throw ValidationError(os.str());
  }
  m_ = real_part(m).m_;
}

HermitianMatrix HermitianMatrix::real_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw ValidationError("hermitian: matrix is not square");
  ComplexMatrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return HermitianMatrix(std::move(h), Trusted{});
}

HermitianMatrix HermitianMatrix::imag_part(const ComplexMatrix& m) {
  const Complex minus_i{0.0, -1.0};
  return real_part(m * minus_i);
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  return HermitianMatrix(ComplexMatrix::diagonal(d), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  return HermitianMatrix(ComplexMatrix(n, n), Trusted{});
}

}  // namespace weylkit
