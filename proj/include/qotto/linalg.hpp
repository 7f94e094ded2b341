#pragma once

// Dense complex linear algebra for the 4x4 two-qubit space.
//
// Basis ordering is |00>, |01>, |10>, |11> with qubit A the left factor.
// NOTE: |0> is the local EXCITED state (the local Hamiltonian is
// 2*omega |0><0|, so |0> carries the energy). Index 3 = |11> is the
// global ground state.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace qotto {

using cx = std::complex<double>;

struct Mat2 {
  std::array<cx, 4> a{};

  cx& operator()(std::size_t i, std::size_t j) { return a[2 * i + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return a[2 * i + j]; }

  double trace_real() const { return a[0].real() + a[3].real(); }
};

struct Mat4 {
  std::array<cx, 16> a{};

  cx& operator()(std::size_t i, std::size_t j) { return a[4 * i + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return a[4 * i + j]; }

  static Mat4 zero() { return Mat4{}; }

  static Mat4 identity() {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat4 diagonal(double d0, double d1, double d2, double d3) {
    Mat4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
  }

  Mat4& operator+=(const Mat4& o) {
    for (std::size_t k = 0; k < 16; ++k) a[k] += o.a[k];
    return *this;
  }
  Mat4& operator-=(const Mat4& o) {
    for (std::size_t k = 0; k < 16; ++k) a[k] -= o.a[k];
    return *this;
  }
  Mat4& operator*=(double s) {
    for (std::size_t k = 0; k < 16; ++k) a[k] *= s;
    return *this;
  }

  friend Mat4 operator+(Mat4 l, const Mat4& r) { return l += r; }
  friend Mat4 operator-(Mat4 l, const Mat4& r) { return l -= r; }
  friend Mat4 operator*(double s, Mat4 m) { return m *= s; }

  friend Mat4 operator*(const Mat4& l, const Mat4& r) {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        cx s = 0.0;
        for (std::size_t k = 0; k < 4; ++k) s += l(i, k) * r(k, j);
        m(i, j) = s;
      }
    return m;
  }

  Mat4 adjoint() const {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  cx trace() const { return a[0] + a[5] + a[10] + a[15]; }

  double max_abs() const {
    double m = 0.0;
    for (const cx& z : a) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cx& z : a) s += std::norm(z);
    return std::sqrt(s);
  }
};

inline bool is_finite(const Mat4& m) {
  for (const cx& z : m.a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

inline bool is_hermitian(const Mat4& m, double tol = 1e-12) {
  if (!is_finite(m)) return false;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

inline void require_hermitian(const Mat4& m, const char* who) {
  double tol = 1e-12 * std::max(1.0, m.max_abs());
  if (!is_hermitian(m, tol))
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
}

// Eigensystem of a Hermitian 4x4 matrix. Eigenvalues ascending,
// eigenvectors are the columns of `vectors`.
struct EigenSystem4 {
  std::array<double, 4> values{};
  Mat4 vectors;

  cx vector(std::size_t n, std::size_t i) const { return vectors(i, n); }
};

namespace detail {

// One complex Jacobi rotation zeroing the (p,q) entry; updates A and V.
inline void jacobi_rotate(Mat4& A, Mat4& V, std::size_t p, std::size_t q) {
  const cx apq = A(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cx phase = apq / r;
  const double d = A(p, p).real() - A(q, q).real();
  const double theta = 0.5 * std::atan2(2.0 * r, d);
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  // Columns: col_p' = c*col_p + s*conj(phase)*col_q,
  //          col_q' = -s*phase*col_p + c*col_q.
  for (std::size_t i = 0; i < 4; ++i) {
    const cx aip = A(i, p), aiq = A(i, q);
    A(i, p) = c * aip + s * std::conj(phase) * aiq;
    A(i, q) = -s * phase * aip + c * aiq;
    const cx vip = V(i, p), viq = V(i, q);
    V(i, p) = c * vip + s * std::conj(phase) * viq;
    V(i, q) = -s * phase * vip + c * viq;
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const cx apj = A(p, j), aqj = A(q, j);
    A(p, j) = c * apj + s * phase * aqj;
    A(q, j) = -s * std::conj(phase) * apj + c * aqj;
  }
}

inline double offdiag_norm(const Mat4& A) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) s += std::norm(A(i, j));
  return std::sqrt(s);
}

}  // namespace detail

// Deterministic phase convention: the largest-magnitude component of each
// eigenvector (first index on ties) is made real positive.
inline void fix_phase(Mat4& vectors) {
  for (std::size_t n = 0; n < 4; ++n) {
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double ai = std::abs(vectors(i, n));
      if (ai > amax + 1e-14) {
        amax = ai;
        imax = i;
      }
    }
    if (amax <= 0.0) continue;
    const cx z = vectors(imax, n);
    const cx ph = std::conj(z) / std::abs(z);
    for (std::size_t i = 0; i < 4; ++i) vectors(i, n) *= ph;
  }
}

// Cyclic Jacobi eigensolver for Hermitian 4x4 matrices.
inline EigenSystem4 eig_hermitian(const Mat4& H) {
  require_hermitian(H, "eig_hermitian");
  Mat4 A = H;
  Mat4 V = Mat4::identity();
  const double scale = std::max(1.0, H.frobenius_norm());
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (detail::offdiag_norm(A) < 1e-15 * scale) break;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) detail::jacobi_rotate(A, V, p, q);
  }

  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::array<double, 4> ev{A(0, 0).real(), A(1, 1).real(), A(2, 2).real(), A(3, 3).real()};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (ev[order[j]] < ev[order[i]]) std::swap(order[i], order[j]);

  EigenSystem4 out;
  for (std::size_t n = 0; n < 4; ++n) {
    out.values[n] = ev[order[n]];
    for (std::size_t i = 0; i < 4; ++i) out.vectors(i, n) = V(i, order[n]);
  }
  fix_phase(out.vectors);
  return out;
}

// sum_n f(lambda_n) |v_n><v_n|
inline Mat4 spectral_function(const Mat4& H, const std::function<double(double)>& f) {
  const EigenSystem4 es = eig_hermitian(H);
  Mat4 out;
  for (std::size_t n = 0; n < 4; ++n) {
    const double fn = f(es.values[n]);
    if (!std::isfinite(fn))
      throw std::range_error("spectral_function: f not finite at an eigenvalue");
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        out(i, j) += fn * es.vector(n, i) * std::conj(es.vector(n, j));
  }
  return out;
}

inline bool is_density(const Mat4& rho, double tol = 1e-12) {
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - cx(1.0)) > tol) return false;
  const EigenSystem4 es = eig_hermitian(rho);
  return es.values[0] >= -tol;
}

inline void require_density(const Mat4& rho, const char* who) {
  if (!is_density(rho))
    throw std::invalid_argument(std::string(who) + ": not a valid density matrix");
}

enum class Subsystem { A, B };

// Reduced 2x2 state of one qubit. Index convention within the pair:
// full index = 2*a + b with a the A-qubit level and b the B-qubit level.
inline Mat2 partial_trace(const Mat4& rho, Subsystem keep) {
  require_density(rho, "partial_trace");
  Mat2 red;
  if (keep == Subsystem::A) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        red(i, j) = rho(2 * i + 0, 2 * j + 0) + rho(2 * i + 1, 2 * j + 1);
  } else {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        red(i, j) = rho(0 + i, 0 + j) + rho(2 + i, 2 + j);
  }
  return red;
}

// S(rho) = -sum lambda ln lambda, in nats (k_B = 1).
inline double von_neumann_entropy(const Mat4& rho) {
  require_density(rho, "von_neumann_entropy");
  const EigenSystem4 es = eig_hermitian(rho);
  double s = 0.0;
  for (double lam : es.values)
    if (lam > 0.0) s -= lam * std::log(lam);
  return std::max(0.0, s);
}

// Delete all off-diagonal entries in the product basis.
inline Mat4 dephase_local(const Mat4& rho) {
  Mat4 out;
  for (std::size_t i = 0; i < 4; ++i) out(i, i) = rho(i, i);
  return out;
}

}  // namespace qotto
