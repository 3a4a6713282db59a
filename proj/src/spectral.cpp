#include "weylkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "weylkit/errors.hpp"
#include "weylkit/format.hpp"

namespace weylkit {

namespace {

// Unitary plane rotation G acting on coordinates (p, q) that annihilates the
// (p, q) entry of G* A G for a Hermitian 2x2 block [[alpha, g], [conj g, beta]]:
//   G_pp = c, G_pq = s, G_qp = -s conj(e), G_qq = c conj(e),  e = g/|g|.
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  double t = 0.0;  // tan of the rotation angle
  Complex e{1.0, 0.0};
};

Rotation make_rotation(double alpha, double beta, Complex g) {
  Rotation r;
  const double mag = std::abs(g);
  r.e = g / mag;
  const double tau = (beta - alpha) / (2.0 * mag);
  r.t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  r.c = 1.0 / std::sqrt(1.0 + r.t * r.t);
  r.s = r.t * r.c;
  return r;
}

// Columns p, q of m replaced by m·G.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex ebar = std::conj(r.e);
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex xp = m(k, p), xq = m(k, q);
    m(k, p) = r.c * xp - r.s * ebar * xq;
    m(k, q) = r.s * xp + r.c * ebar * xq;
  }
}

// Rows p, q of m replaced by G*·m.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex xp = m(p, k), xq = m(q, k);
    m(p, k) = r.c * xp - r.s * r.e * xq;
    m(q, k) = r.s * xp + r.c * r.e * xq;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace

ComplexMatrix SpectralDecomposition::synthesize(std::span<const Complex> values) const {
  const std::size_t n = dim();
  ComplexMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == Complex{}) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex ui = eigenvectors(i, k) * values[k];
      if (ui == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += ui * std::conj(eigenvectors(j, k));
    }
  }
  return r;
}

SpectralDecomposition eigh(const HermitianMatrix& h, JacobiOptions opts) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.norm_fro();

  bool converged = n <= 1 || scale == 0.0;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        const double alpha = a(p, p).real(), beta = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(alpha) + 100.0 * mag == std::abs(alpha) &&
            std::abs(beta) + 100.0 * mag == std::abs(beta)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const Rotation r = make_rotation(alpha, beta, g);
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, p) = alpha - r.t * mag;
        a(q, q) = beta + r.t * mag;
        a(p, q) = a(q, p) = 0.0;
        rotate_columns(v, p, q, r);
      }
    }
    const double off = off_diagonal_norm(a);
    converged = off == 0.0 || off <= 1e-18 * scale;
  }
  if (!converged) {
    std::ostringstream os;
    os << "eigh: Jacobi did not converge in " << opts.max_sweeps
       << " sweeps, off-diagonal residual " << off_diagonal_norm(a);
    throw ConvergenceError(os.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix matrix_function(const SpectralDecomposition& s, const ScalarFunction& f) {
  std::vector<Complex> vals(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) {
    vals[k] = f(s.eigenvalues[k]);
    if (!std::isfinite(vals[k].real()) || !std::isfinite(vals[k].imag())) {
      throw DomainError("matrix_function: f is not finite at eigenvalue " +
                        format_double(s.eigenvalues[k]));
    }
  }
  return s.synthesize(vals);
}

ComplexMatrix matrix_function(const HermitianMatrix& h, const ScalarFunction& f) {
  return matrix_function(eigh(h), f);
}

HermitianMatrix hermitian_function(const SpectralDecomposition& s,
                                   const std::function<double(double)>& f) {
  return HermitianMatrix::real_part(
      matrix_function(s, [&](double x) { return Complex{f(x), 0.0}; }));
}

HermitianMatrix spectral_projection(const SpectralDecomposition& s, const IntervalSet& delta) {
  std::vector<Complex> ind(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) ind[k] = delta.contains(s.eigenvalues[k]) ? 1.0 : 0.0;
  return HermitianMatrix::real_part(s.synthesize(ind));
}

HermitianMatrix spectral_projection(const HermitianMatrix& h, const IntervalSet& delta) {
  return spectral_projection(eigh(h), delta);
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  ComplexMatrix w = m.cols() > m.rows() ? m.adjoint() : m;
  const std::size_t n = w.cols();
  constexpr double eps = 2.220446049250313e-16;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma{};
        for (std::size_t k = 0; k < w.rows(); ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) continue;
        rotated = true;
        rotate_columns(w, p, q, make_rotation(alpha, beta, gamma));
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.rows(); ++k) s += std::norm(w(k, j));
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double norm2(const ComplexMatrix& m) {
  const auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.front();
}

std::size_t rank_eps(const ComplexMatrix& m, double tol, double scale) {
  const auto sv = singular_values(m);
  if (sv.empty()) return 0;
  const double thresh = tol * std::max(sv.front(), scale);
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s > thresh; }));
}

double min_eigenvalue(const HermitianMatrix& h) {
  if (h.dim() == 0) return 0.0;
  return eigh(h).eigenvalues.front();
}

}  // namespace weylkit
