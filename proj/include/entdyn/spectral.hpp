#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entdyn/errors.hpp"
#include "entdyn/matrix.hpp"

namespace entdyn {

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // orthonormal columns, vectors.col(k) <-> values[k]
};

/// Cyclic Jacobi eigensolver for real symmetric matrices. Plenty accurate
/// and robust at the sizes this library handles; converges quadratically.
inline SymmetricEigen jacobi_eigensolve(Matrix a, int max_sweeps = 100) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi: matrix not square");
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  const double scale = std::max(max_abs(a), 1e-300);

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
    if (off <= 1e-15 * scale) {
      converged = true;
      break;
    }

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-18 * scale) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::fabs(theta) > 1e15) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i != p && i != q) {
            const double aip = a(i, p), aiq = a(i, q);
            a(i, p) = aip - s * (aiq + tau * aip);
            a(p, i) = a(i, p);
            a(i, q) = aiq + s * (aip - tau * aiq);
            a(q, i) = a(i, q);
          }
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
    if (off > 1e-13 * scale) throw NumericError("jacobi eigensolver failed to converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&a](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Eigen-decomposition of a positive-definite potential matrix, stored as
/// mode frequencies omega_i = sqrt(eigenvalue_i) with the orthogonal mode
/// matrix. Every closed-form propagator is assembled from this.
class SpectralSystem {
 public:
  SpectralSystem(Matrix modes, std::vector<double> frequencies)
      : modes_(std::move(modes)), freqs_(std::move(frequencies)) {
    if (modes_.rows() != modes_.cols() || modes_.rows() != freqs_.size())
      throw std::invalid_argument("spectral system: inconsistent dimensions");
  }

  std::size_t dimension() const { return freqs_.size(); }

  /// Orthogonal matrix whose k-th column is the k-th normal mode.
  const Matrix& modes() const { return modes_; }

  /// Mode frequencies, ascending, all strictly positive.
  const std::vector<double>& frequencies() const { return freqs_; }

  double frequency(std::size_t k) const { return freqs_.at(k); }
  double mode_weight(std::size_t vertex, std::size_t k) const { return modes_(vertex, k); }

 private:
  Matrix modes_;
  std::vector<double> freqs_;
};

/// Decompose a symmetric positive-definite matrix into a SpectralSystem.
/// The input must be symmetric to within 1e-12 relative to its magnitude.
inline SpectralSystem eig_sym(const Matrix& v) {
  if (v.rows() != v.cols()) throw std::invalid_argument("eig_sym: matrix not square");
  if (symmetry_gap(v) > 1e-12 * std::max(1.0, max_abs(v)))
    throw std::invalid_argument("eig_sym: matrix not symmetric");
  SymmetricEigen eig = jacobi_eigensolve(v);
  std::vector<double> freqs(eig.values.size());
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] <= 0.0)
      throw std::invalid_argument("eig_sym: matrix not positive definite");
    freqs[k] = std::sqrt(eig.values[k]);
  }
  return SpectralSystem(std::move(eig.vectors), std::move(freqs));
}

/// f applied to the decomposed matrix through its spectrum:
/// modes * diag(f(omega_i)) * modes^T.
template <class F>
Matrix matrix_function(const SpectralSystem& s, F&& f) {
  const std::size_t n = s.dimension();
  const Matrix& omega = s.modes();
  std::vector<double> fw(n);
  for (std::size_t k = 0; k < n; ++k) fw[k] = f(s.frequency(k));
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += omega(i, k) * fw[k] * omega(j, k);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace entdyn
