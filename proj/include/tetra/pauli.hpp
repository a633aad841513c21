#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "tetra/matrix.hpp"
#include "tetra/vec3.hpp"

namespace tetra {

struct BadAxis : std::invalid_argument {
  BadAxis() : std::invalid_argument("rotation axis must have unit length") {}
};

/// Two-bit index into the displacement (Pauli) group:
/// (0,0) -> identity, (0,1) -> sigma_z, (1,0) -> sigma_x, (1,1) -> sigma_y.
struct PauliIndex {
  std::uint8_t i = 0;
  std::uint8_t j = 0;

  /// Linear index in the fixed label order (0,0),(0,1),(1,0),(1,1).
  constexpr int index() const { return 2 * i + j; }
  static constexpr PauliIndex from_index(int k) {
    return {static_cast<std::uint8_t>((k >> 1) & 1), static_cast<std::uint8_t>(k & 1)};
  }
  friend constexpr bool operator==(PauliIndex a, PauliIndex b) = default;
};

/// Label of a Bell state: the Pauli applied to qubit b of the singlet.
/// (0,0) labels the singlet itself.
using BellLabel = PauliIndex;

inline const std::array<PauliIndex, 4> kPauliLabels = {
    PauliIndex{0, 0}, PauliIndex{0, 1}, PauliIndex{1, 0}, PauliIndex{1, 1}};

/// The displacement operator named by idx. sigma_x and sigma_z real,
/// sigma_y fixed as [[0,-i],[i,0]].
inline Mat2 sigma(PauliIndex idx) {
  Mat2 m;
  switch (idx.index()) {
    case 0:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 1:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case 2:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    default:
      m(0, 1) = cx(0.0, -1.0);
      m(1, 0) = cx(0.0, 1.0);
      break;
  }
  return m;
}

inline Mat2 sigma_x() { return sigma({1, 0}); }
inline Mat2 sigma_y() { return sigma({1, 1}); }
inline Mat2 sigma_z() { return sigma({0, 1}); }

/// a.x*sigma_x + a.y*sigma_y + a.z*sigma_z
inline Mat2 bloch_dot_sigma(Vec3 a) {
  Mat2 m;
  m(0, 0) = a.z;
  m(1, 1) = -a.z;
  m(0, 1) = cx(a.x, -a.y);
  m(1, 0) = cx(a.x, a.y);
  return m;
}

/// Qubit density operator with the given Bloch vector.
inline Mat2 density_from_bloch(Vec3 p) {
  return 0.5 * (Mat2::identity() + bloch_dot_sigma(p));
}

/// Bloch vector of a qubit operator: p_u = Tr(rho sigma_u).
inline Vec3 bloch_of(const Mat2& rho) {
  return {trace(rho * sigma_x()).real(), trace(rho * sigma_y()).real(),
          trace(rho * sigma_z()).real()};
}

/// The singlet (|10> - |01>)/sqrt(2) as a density operator.
inline Mat4 singlet_projector() {
  Mat4 m;
  const double h = 0.5;
  m(1, 1) = h;
  m(2, 2) = h;
  m(1, 2) = -h;
  m(2, 1) = -h;
  return m;
}

/// Bell state (I (x) sigma_label) |singlet><singlet| (I (x) sigma_label)^dagger.
inline Mat4 bell_state(BellLabel label) {
  const Mat4 u = tensor(Mat2::identity(), sigma(label));
  return u * singlet_projector() * adjoint(u);
}

/// exp(-i angle/2 axis.sigma). Conjugation rotates Bloch vectors by `angle`
/// about `axis` (right-hand rule). Throws BadAxis unless |axis| = 1 within 1e-12.
inline Mat2 rotation_unitary(Vec3 axis, double angle) {
  if (std::abs(norm(axis) - 1.0) > 1e-12) throw BadAxis();
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  return c * Mat2::identity() + cx(0.0, -s) * bloch_dot_sigma(axis);
}

/// Bloch-sphere action of conjugation by sigma(idx): the label permutation it
/// induces on the tetrahedron tops. sigma_{i,j} maps top (k,l) to (k^i, l^j).
inline std::array<int, 4> pauli_label_action(PauliIndex idx) {
  std::array<int, 4> perm{};
  for (int k = 0; k < 4; ++k) {
    const PauliIndex lab = PauliIndex::from_index(k);
    perm[k] = PauliIndex{static_cast<std::uint8_t>(lab.i ^ idx.i),
                         static_cast<std::uint8_t>(lab.j ^ idx.j)}
                  .index();
  }
  return perm;
}

}  // namespace tetra
