#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace tetra {

using cx = std::complex<double>;

struct NotHermitian : std::runtime_error {
  explicit NotHermitian(double deviation)
      : std::runtime_error("matrix is not Hermitian (max |m - m^dagger| = " +
                           std::to_string(deviation) + ")") {}
};

/// Dense complex matrix of fixed dimension 2 or 4, row-major.
template <std::size_t N>
class Matrix {
  static_assert(N == 2 || N == 4, "only qubit (2) and two-qubit (4) operators supported");

 public:
  constexpr Matrix() : e_{} {}

  static constexpr std::size_t dim = N;

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  cx& operator()(std::size_t r, std::size_t c) { return e_[r * N + c]; }
  const cx& operator()(std::size_t r, std::size_t c) const { return e_[r * N + c]; }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) e_[i] += o.e_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) e_[i] -= o.e_[i];
    return *this;
  }
  Matrix& operator*=(cx s) {
    for (auto& v : e_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cx s) { return a *= s; }
  friend Matrix operator*(cx s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cx aik = a(i, k);
        if (aik == cx{}) continue;
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  bool finite() const {
    for (const auto& v : e_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

 private:
  std::array<cx, N * N> e_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
cx trace(const Matrix<N>& m) {
  cx t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& m) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

/// Max entrywise |m - m^dagger|.
template <std::size_t N>
double hermiticity_error(const Matrix<N>& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

/// Kronecker product, row-major block convention:
/// entry(2i+k, 2j+l) = a(i,j) * b(k,l).
inline Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

/// Trace out the second (right) qubit of a two-qubit operator.
inline Mat2 partial_trace_right(const Mat4& m) {
  Mat2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) r(i, j) += m(2 * i + k, 2 * j + k);
  return r;
}

/// Trace out the first (left) qubit.
inline Mat2 partial_trace_left(const Mat4& m) {
  Mat2 r;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t i = 0; i < 2; ++i) r(k, l) += m(2 * i + k, 2 * i + l);
  return r;
}

namespace detail {

// One two-sided Jacobi rotation zeroing the (p,q) entry of a Hermitian matrix.
template <std::size_t N>
void jacobi_rotate(Matrix<N>& a, std::size_t p, std::size_t q) {
  const cx apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const double phi = std::atan2(apq.imag(), apq.real());
  const double alpha = a(p, p).real();
  const double gamma = a(q, q).real();
  const double tau = (gamma - alpha) / (2.0 * b);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::hypot(1.0, tau))
                                : -1.0 / (-tau + std::hypot(1.0, tau));
  const double c = 1.0 / std::hypot(1.0, t);
  const double s = t * c;
  const cx eip = std::polar(1.0, phi);
  const cx eim = std::conj(eip);

  // columns p, q  (A <- A J with J_pp=c, J_qp=-s e^{-i phi}, J_pq=s e^{i phi}, J_qq=c)
  for (std::size_t r = 0; r < N; ++r) {
    const cx arp = a(r, p), arq = a(r, q);
    a(r, p) = c * arp - s * eim * arq;
    a(r, q) = s * eip * arp + c * arq;
  }
  // rows p, q  (A <- J^dagger A)
  for (std::size_t col = 0; col < N; ++col) {
    const cx apc = a(p, col), aqc = a(q, col);
    a(p, col) = c * apc - s * eip * aqc;
    a(q, col) = s * eim * apc + c * aqc;
  }
  a(p, q) = cx{};
  a(q, p) = cx{};
}

template <std::size_t N>
double offdiag_norm(const Matrix<N>& a) {
  double sum = 0.0;
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q) sum += std::norm(a(p, q));
  return std::sqrt(sum);
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending. Closed form for dim 2,
/// cyclic Jacobi for dim 4. Throws NotHermitian if the entrywise deviation
/// from m^dagger exceeds `tol`.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Matrix<N>& m, double tol = 1e-12) {
  const double dev = hermiticity_error(m);
  if (dev > tol) throw NotHermitian(dev);

  std::array<double, N> ev{};
  if constexpr (N == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double b = std::abs(cx(0.5) * (m(0, 1) + std::conj(m(1, 0))));
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), b);
    ev = {mean - r, mean + r};
  } else {
    // symmetrize once so Jacobi sees an exactly Hermitian input
    Matrix<N> a;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    double scale = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) scale = std::max(scale, std::abs(a(i, j)));
    const double stop = std::max(scale, 1.0) * 1e-15;
    for (int sweep = 0; sweep < 64 && detail::offdiag_norm(a) > stop; ++sweep)
      for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, p, q);
    for (std::size_t i = 0; i < N; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
  }
  return ev;
}

template <std::size_t N>
double min_eigenvalue(const Matrix<N>& m, double tol = 1e-12) {
  return hermitian_eigenvalues(m, tol)[0];
}

}  // namespace tetra
