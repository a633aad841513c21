#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tetra/matrix.hpp"
#include "tetra/pauli.hpp"
#include "tetra/vec3.hpp"

namespace tetra {

struct UnphysicalBloch : std::invalid_argument {
  UnphysicalBloch() : std::invalid_argument("Bloch vector lies outside the unit ball") {}
};

struct NotNormalized : std::invalid_argument {
  explicit NotNormalized(const char* what) : std::invalid_argument(what) {}
};

enum class Parity { Even, Odd };

inline constexpr double kInvSqrt3 = 0.57735026918962576451;

/// SIC-POVM measurement frame: four unit Bloch directions forming a regular
/// tetrahedron, labelled (0,0),(0,1),(1,0),(1,1) in that fixed order.
/// Even parity is the canonical tetrahedron, odd its point reflection
/// (anti-tetrahedron) with labels carried over.
struct Frame {
  Parity parity = Parity::Even;
  std::array<Vec3, 4> directions{};

  /// POVM effect for a label: (1/4)(I + direction.sigma).
  Mat2 effect(int label) const {
    return 0.25 * (Mat2::identity() + bloch_dot_sigma(directions[label]));
  }
};

/// Canonical tetrahedron directions, label order (0,0),(0,1),(1,0),(1,1).
inline const std::array<Vec3, 4> kTetrahedron = {
    Vec3{kInvSqrt3, kInvSqrt3, kInvSqrt3}, Vec3{-kInvSqrt3, -kInvSqrt3, kInvSqrt3},
    Vec3{kInvSqrt3, -kInvSqrt3, -kInvSqrt3}, Vec3{-kInvSqrt3, kInvSqrt3, -kInvSqrt3}};

inline Frame frame(Parity parity) {
  Frame f;
  f.parity = parity;
  for (int k = 0; k < 4; ++k)
    f.directions[k] = (parity == Parity::Even) ? kTetrahedron[k] : -kTetrahedron[k];
  return f;
}

/// Probabilities of firing for a state with Bloch vector p:
/// P_L = (1/4)(1 + t_L . p). Throws UnphysicalBloch when |p| > 1 + 1e-9.
inline std::array<double, 4> povm_probabilities(Vec3 p, const Frame& f) {
  if (norm(p) > 1.0 + 1e-9) throw UnphysicalBloch();
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = 0.25 * (1.0 + dot(f.directions[k], p));
  return out;
}

/// Exact linear inverse of povm_probabilities: p = 3 sum_L P_L t_L.
/// Inputs off the probability simplex by at most 1e-6 are renormalized
/// silently; larger deviations throw NotNormalized. May return |p| > 1 for
/// noisy input; the caller decides physicality.
inline Vec3 bloch_from_probabilities(std::array<double, 4> probs, const Frame& f) {
  const double sum = probs[0] + probs[1] + probs[2] + probs[3];
  if (std::abs(sum - 1.0) > 1e-6) throw NotNormalized("POVM probabilities must sum to 1");
  Vec3 p{};
  for (int k = 0; k < 4; ++k) p = p + (3.0 * probs[k] / sum) * f.directions[k];
  return p;
}

/// Fiducial state of the even frame: alpha|0> + beta|1> with
/// alpha = sqrt((1+1/sqrt3)/2) and beta = e^{i pi/4} sqrt((1-1/sqrt3)/2),
/// normalized to unit norm; its Bloch vector is (1,1,1)/sqrt(3).
inline std::array<cx, 2> fiducial_ket() {
  const double alpha = std::sqrt(0.5 * (1.0 + kInvSqrt3));
  const double beta = std::sqrt(0.5 * (1.0 - kInvSqrt3));
  return {cx(alpha, 0.0), std::polar(beta, 0.25 * std::numbers::pi)};
}

/// The orthogonal transformation mapping tetrahedron tops onto
/// anti-tetrahedron tops (and back): x -> -z, y -> -y, z -> -x.
inline Mat3 o_matrix() {
  Mat3 o;
  o(0, 2) = -1.0;
  o(1, 1) = -1.0;
  o(2, 0) = -1.0;
  return o;
}

struct FrameEquivalenceReport {
  // per even label: O . t_L lands on the odd-frame direction at swapped(L),
  // where swapped exchanges labels (0,1) and (1,0).
  std::array<bool, 4> label_ok{};
  bool all_ok = false;
};

/// Checks that rotating the tetrahedron by O reproduces the anti-tetrahedron
/// with labels (0,1) and (1,0) interchanged.
inline FrameEquivalenceReport verify_frame_equivalence() {
  const Mat3 o = o_matrix();
  const Frame even = frame(Parity::Even);
  const Frame odd = frame(Parity::Odd);
  constexpr std::array<int, 4> swapped = {0, 2, 1, 3};
  FrameEquivalenceReport rep;
  rep.all_ok = true;
  for (int k = 0; k < 4; ++k) {
    const Vec3 image = o.apply(even.directions[k]);
    rep.label_ok[k] = norm(image - odd.directions[swapped[k]]) < 1e-12;
    rep.all_ok = rep.all_ok && rep.label_ok[k];
  }
  return rep;
}

}  // namespace tetra
