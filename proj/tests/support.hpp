#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "tetra/matrix.hpp"
#include "tetra/rng.hpp"

namespace tetra::test {

inline double gaussian(Rng& rng) {
  // Box-Muller; one value per call is plenty for test data.
  double u1 = rng.uniform01();
  while (u1 == 0.0) u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Random density matrix from the Ginibre ensemble: G G^dagger / Tr.
template <std::size_t N>
Matrix<N> random_density(Rng& rng) {
  Matrix<N> g;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) g(r, c) = cx(gaussian(rng), gaussian(rng));
  Matrix<N> rho = g * adjoint(g);
  const double t = trace(rho).real();
  rho *= cx(1.0 / t);
  return rho;
}

/// Random Hermitian matrix with entries of order 1.
template <std::size_t N>
Matrix<N> random_hermitian(Rng& rng) {
  Matrix<N> g;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) g(r, c) = cx(gaussian(rng), gaussian(rng));
  Matrix<N> h = g + adjoint(g);
  h *= cx(0.5);
  return h;
}

/// Projector onto a pure two-qubit state given by 4 amplitudes.
inline Mat4 projector(const std::array<cx, 4>& amps) {
  Mat4 p;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) p(r, c) = amps[r] * std::conj(amps[c]);
  return p;
}

inline double det4(const std::array<std::array<double, 4>, 4>& m) {
  // Laplace expansion along the first row; fine for test-sized work.
  auto det3 = [](double a, double b, double c, double d, double e, double f, double g, double h,
                 double i) { return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g); };
  double sum = 0.0;
  for (int col = 0; col < 4; ++col) {
    std::array<double, 9> minor{};
    int idx = 0;
    for (int r = 1; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (c != col) minor[idx++] = m[r][c];
    const double d3 = det3(minor[0], minor[1], minor[2], minor[3], minor[4], minor[5], minor[6],
                           minor[7], minor[8]);
    sum += (col % 2 == 0 ? 1.0 : -1.0) * m[0][col] * d3;
  }
  return sum;
}

}  // namespace tetra::test
