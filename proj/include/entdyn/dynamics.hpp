#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "entdyn/errors.hpp"
#include "entdyn/graph.hpp"
#include "entdyn/matrix.hpp"
#include "entdyn/spectral.hpp"

namespace entdyn {

/// One simulation instance: which graph, how strongly coupled, and the
/// time grid (uniform, inclusive of both endpoints).
struct SimConfig {
  Graph graph;
  double coupling;      // c >= 0
  double t_max;         // > 0
  std::size_t samples;  // >= 2 grid points on [0, t_max]

  SimConfig(Graph g, double c, double tmax, std::size_t n_samples)
      : graph(std::move(g)), coupling(c), t_max(tmax), samples(n_samples) {
    if (!(coupling >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
    if (samples < 2) throw std::invalid_argument("need at least 2 time samples");
  }

  double grid_time(std::size_t k) const {
    return t_max * static_cast<double>(k) / static_cast<double>(samples - 1);
  }
};

/// Potential matrix of the oscillator network: V = I + c * Laplacian.
/// Unit on-site frequency, interaction strength c on every edge.
inline Matrix potential(const Graph& g, double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
  Matrix v = g.laplacian();
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v(i, j) = c * v(i, j) + (i == j ? 1.0 : 0.0);
  return v;
}

/// The symplectic form in (all x, then all p) ordering: [[0, I], [-I, 0]].
inline Matrix symplectic_form(std::size_t modes) {
  Matrix s(2 * modes, 2 * modes);
  for (std::size_t i = 0; i < modes; ++i) {
    s(i, modes + i) = 1.0;
    s(modes + i, i) = -1.0;
  }
  return s;
}

namespace detail {

// Per-mode covariance kernels for the uncorrelated initial state.
inline double cov_xx(double omega, double t) {
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  return c * c + s * s / (omega * omega);
}
inline double cov_pp(double omega, double t) {
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  return c * c + omega * omega * s * s;
}
inline double cov_xp(double omega, double t) {
  return (1.0 / omega - omega) * std::sin(omega * t) * std::cos(omega * t);
}

}  // namespace detail

/// Phase-space propagator for unit kinetic matrix,
/// [[cos Wt, W^-1 sin Wt], [-W sin Wt, cos Wt]] with W the square root of
/// the potential. Symplectic for every t.
inline Matrix propagator(const SpectralSystem& s, double t) {
  const std::size_t n = s.dimension();
  const Matrix c = matrix_function(s, [t](double w) { return std::cos(w * t); });
  const Matrix sx = matrix_function(s, [t](double w) { return std::sin(w * t) / w; });
  const Matrix sp = matrix_function(s, [t](double w) { return -w * std::sin(w * t); });
  Matrix u(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      u(i, j) = c(i, j);
      u(i, n + j) = sx(i, j);
      u(n + i, j) = sp(i, j);
      u(n + i, n + j) = c(i, j);
    }
  return u;
}

/// Full 2N x 2N covariance matrix in (all x, then all p) ordering.
class CovarianceMatrix {
 public:
  CovarianceMatrix(std::size_t modes, Matrix gamma)
      : modes_(modes), gamma_(std::move(gamma)) {
    if (gamma_.rows() != 2 * modes_ || gamma_.cols() != 2 * modes_)
      throw std::invalid_argument("covariance matrix must be 2N x 2N");
  }

  std::size_t modes() const { return modes_; }
  const Matrix& matrix() const { return gamma_; }

 private:
  std::size_t modes_;
  Matrix gamma_;
};

/// Covariance of the network at time t, evolved from the identity
/// (uncorrelated vacuum-like) initial covariance.
inline CovarianceMatrix covariance_at(const SpectralSystem& s, double t) {
  const std::size_t n = s.dimension();
  const Matrix gxx = matrix_function(s, [t](double w) { return detail::cov_xx(w, t); });
  const Matrix gpp = matrix_function(s, [t](double w) { return detail::cov_pp(w, t); });
  const Matrix gxp = matrix_function(s, [t](double w) { return detail::cov_xp(w, t); });
  Matrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      g(i, j) = gxx(i, j);
      g(i, n + j) = gxp(i, j);
      g(n + i, j) = gxp(i, j);
      g(n + i, n + j) = gpp(i, j);
    }
  return CovarianceMatrix(n, std::move(g));
}

/// 4x4 covariance of one vertex pair in (x_1, p_1, x_2, p_2) ordering.
/// The reorder from the (x-block, p-block) layout happens exactly here.
class TwoModeCovariance {
 public:
  explicit TwoModeCovariance(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4)
      throw std::invalid_argument("two-mode covariance must be 4x4");
  }

  const Matrix& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Single-mode 2x2 block of mode 0 or 1.
  Matrix alpha(std::size_t mode) const {
    Matrix a(2, 2);
    const std::size_t o = 2 * mode;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = m_(o + i, o + j);
    return a;
  }

  /// Cross-mode 2x2 block.
  Matrix beta() const {
    Matrix b(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = m_(i, 2 + j);
    return b;
  }

  /// Largest entry difference between the two single-mode blocks. Zero for
  /// a pair equivalent under the graph symmetry.
  double mode_asymmetry() const {
    return max_abs_diff(alpha(0), alpha(1));
  }

 private:
  Matrix m_;
};

namespace detail {

inline TwoModeCovariance assemble_pair(double xx_i, double pp_i, double xp_i,
                                       double xx_j, double pp_j, double xp_j,
                                       double xx_c, double pp_c, double xp_c) {
  Matrix m(4, 4);
  m(0, 0) = xx_i;
  m(0, 1) = m(1, 0) = xp_i;
  m(1, 1) = pp_i;
  m(2, 2) = xx_j;
  m(2, 3) = m(3, 2) = xp_j;
  m(3, 3) = pp_j;
  m(0, 2) = m(2, 0) = xx_c;
  m(0, 3) = m(3, 0) = xp_c;
  m(1, 2) = m(2, 1) = xp_c;
  m(1, 3) = m(3, 1) = pp_c;
  return TwoModeCovariance(std::move(m));
}

inline void require_pair_symmetry(const TwoModeCovariance& m, std::size_t i, std::size_t j) {
  const double tol = 1e-8 * std::max(1.0, max_abs(m.matrix()));
  if (m.mode_asymmetry() > tol)
    throw DomainError("vertices " + std::to_string(i) + " and " + std::to_string(j) +
                      " are not equivalent under the graph symmetry (single-mode "
                      "blocks differ by " + std::to_string(m.mode_asymmetry()) +
                      "); pairwise entanglement of formation is undefined");
}

}  // namespace detail

/// Reduce the evolved state to the (i, j) vertex pair without touching the
/// 2N x 2N matrix: six spectral sums, O(N) per pair.
/// Throws DomainError when the two vertices are not symmetry-equivalent.
inline TwoModeCovariance pair_reduction(const SpectralSystem& s, double t,
                                        std::size_t i, std::size_t j) {
  const std::size_t n = s.dimension();
  if (i >= n || j >= n) throw std::invalid_argument("vertex index out of range");
  if (i == j) throw std::invalid_argument("pair vertices must differ");

  double xx_i = 0, pp_i = 0, xp_i = 0;
  double xx_j = 0, pp_j = 0, xp_j = 0;
  double xx_c = 0, pp_c = 0, xp_c = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = s.frequency(k);
    const double oi = s.mode_weight(i, k), oj = s.mode_weight(j, k);
    const double gxx = detail::cov_xx(w, t);
    const double gpp = detail::cov_pp(w, t);
    const double gxp = detail::cov_xp(w, t);
    xx_i += oi * oi * gxx;
    pp_i += oi * oi * gpp;
    xp_i += oi * oi * gxp;
    xx_j += oj * oj * gxx;
    pp_j += oj * oj * gpp;
    xp_j += oj * oj * gxp;
    xx_c += oi * oj * gxx;
    pp_c += oi * oj * gpp;
    xp_c += oi * oj * gxp;
  }
  TwoModeCovariance m =
      detail::assemble_pair(xx_i, pp_i, xp_i, xx_j, pp_j, xp_j, xx_c, pp_c, xp_c);
  detail::require_pair_symmetry(m, i, j);
  return m;
}

/// The same reduction read out of an existing full covariance matrix.
inline TwoModeCovariance extract_pair(const CovarianceMatrix& g, std::size_t i,
                                      std::size_t j) {
  const std::size_t n = g.modes();
  if (i >= n || j >= n) throw std::invalid_argument("vertex index out of range");
  if (i == j) throw std::invalid_argument("pair vertices must differ");
  const Matrix& m = g.matrix();
  return detail::assemble_pair(m(i, i), m(n + i, n + i), m(i, n + i),
                               m(j, j), m(n + j, n + j), m(j, n + j),
                               m(i, j), m(n + i, n + j), m(i, n + j));
}

/// Closed-form pair covariance for the complete graph on n_modes vertices.
/// Two frequencies only (1 and sqrt(1 + N c)), so no eigensolve is needed;
/// this is the fast path behind the saturation table and sweeps.
inline TwoModeCovariance meanfield_pair_covariance(std::size_t n_modes, double c,
                                                   double t) {
  if (n_modes < 2) throw std::invalid_argument("mean-field cluster needs >= 2 modes");
  if (!(c >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
  const double n = static_cast<double>(n_modes);
  const double w = std::sqrt(1.0 + n * c);
  const double sn = std::sin(w * t), cs = std::cos(w * t);
  const double xx = 1.0 / n + (1.0 - 1.0 / n) * (cs * cs + sn * sn / (w * w));
  const double xx_c = (1.0 / n) * (1.0 - 1.0 / (w * w)) * sn * sn;
  const double pp = 1.0 / n + (1.0 - 1.0 / n) * (cs * cs + w * w * sn * sn);
  const double pp_c = (1.0 / n) * (1.0 - w * w) * sn * sn;
  const double xp = (1.0 - 1.0 / n) * (1.0 / w - w) * sn * cs;
  const double xp_c = -(1.0 / n) * (1.0 / w - w) * sn * cs;
  return detail::assemble_pair(xx, pp, xp, xx, pp, xp, xx_c, pp_c, xp_c);
}

}  // namespace entdyn
