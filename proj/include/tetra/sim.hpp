#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "tetra/matrix.hpp"
#include "tetra/pauli.hpp"
#include "tetra/rng.hpp"
#include "tetra/sic.hpp"
#include "tetra/tables.hpp"
#include "tetra/wigner.hpp"

namespace tetra {

struct NonPhysicalState : std::invalid_argument {
  explicit NonPhysicalState(double min_eig)
      : std::invalid_argument("state has negative eigenvalue " + std::to_string(min_eig)) {}
};

struct OutOfRange : std::invalid_argument {
  explicit OutOfRange(const char* what) : std::invalid_argument(what) {}
};

/// Born-rule joint detector statistics P_{k,l} = Tr(rho E^A_k (x) E^B_l).
/// Throws NonPhysicalState when rho has an eigenvalue below -1e-9.
inline JointProbabilityTable joint_table(const Mat4& rho, const Frame& fa, const Frame& fb) {
  const double mev = min_eigenvalue(rho);
  if (mev < -1e-9) throw NonPhysicalState(mev);
  JointProbabilityTable t;
  t.frame_a = fa.parity;
  t.frame_b = fb.parity;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      double p = trace(rho * tensor(fa.effect(k), fb.effect(l))).real();
      // Born probabilities that vanish exactly (forbidden coincidences)
      // must come out as exact zeros so they can never be sampled; snap
      // away the trace's rounding residue.
      if (std::abs(p) <= 1e-14) p = 0.0;
      t.at(k, l) = p;
    }
  return t;
}

inline JointProbabilityTable joint_table(const Mat4& rho, Parity pa, Parity pb) {
  return joint_table(rho, frame(pa), frame(pb));
}

/// Werner state v |singlet><singlet| + (1-v) I/4.
inline Mat4 werner(double v) {
  if (v < 0.0 || v > 1.0) throw OutOfRange("Werner visibility must lie in [0,1]");
  return v * singlet_projector() + cx(0.25 * (1.0 - v)) * Mat4::identity();
}

/// Isotropic (global depolarizing) noise around an arbitrary state.
inline Mat4 depolarized(const Mat4& rho, double v) {
  if (v < 0.0 || v > 1.0) throw OutOfRange("visibility must lie in [0,1]");
  return v * rho + cx(0.25 * (1.0 - v)) * Mat4::identity();
}

/// Local depolarizing channel applied to both qubits: Pauli coefficients
/// with one (two) nonidentity factors are damped by v (v^2).
inline Mat4 depolarized_per_qubit(const Mat4& rho, double v) {
  if (v < 0.0 || v > 1.0) throw OutOfRange("visibility must lie in [0,1]");
  Mat4 out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Mat4 basis = tensor(sigma(PauliIndex::from_index(a)), sigma(PauliIndex::from_index(b)));
      const cx coeff = trace(rho * basis) * cx(0.25);
      const double damp = (a == 0 ? 1.0 : v) * (b == 0 ? 1.0 : v);
      out += (coeff * damp) * basis;
    }
  return out;
}

/// Frame rigidly rotated by `angle` about `axis`; effects still sum to I and
/// the rotation equals conjugation of each effect by rotation_unitary.
inline Frame rotate_frame(const Frame& f, Vec3 axis, double angle) {
  if (std::abs(norm(axis) - 1.0) > 1e-12) throw BadAxis();
  const Mat3 r = rotation_matrix(axis, angle);
  Frame out;
  out.parity = f.parity;
  for (int k = 0; k < 4; ++k) out.directions[k] = r.apply(f.directions[k]);
  return out;
}

/// Misaligned canonical frame of the given parity.
inline Frame misalign(Parity parity, Vec3 axis, double angle) {
  return rotate_frame(frame(parity), axis, angle);
}

/// Single coincidence drawn from a joint table using the session stream.
inline int draw_cell(Rng& rng, const JointProbabilityTable& table) {
  return rng.categorical(table.p);
}

/// Multinomial sample of `shots` coincidences. Fully determined by the seed;
/// zero-probability cells never fire.
inline CountTable sample_counts(const JointProbabilityTable& table, std::uint64_t shots,
                                std::uint64_t seed) {
  if (shots < 1) throw OutOfRange("shots must be at least 1");
  if (std::abs(table.total() - 1.0) > 1e-9)
    throw NotNormalized("joint probability table must sum to 1");
  Rng rng(seed);
  CountTable out;
  out.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) ++out.counts[draw_cell(rng, table)];
  return out;
}

/// Linear-inversion tomography from raw counts: frequencies -> Wigner
/// coefficients -> density operator. rho_hat may be nonphysical for noisy
/// finite samples and is reported as-is with its minimum eigenvalue.
struct Estimate {
  QuartitWigner w_hat;
  Mat4 rho_hat;
  double min_eigenvalue = 0.0;
};

inline Estimate estimate(const CountTable& counts, Parity pa, Parity pb) {
  if (counts.shots < 1) throw OutOfRange("count table is empty");
  Estimate est;
  est.w_hat = quartit_wigner_from_joint(counts.frequencies(pa, pb));
  est.rho_hat = density_from_quartit_wigner(est.w_hat, pa, pb);
  est.min_eigenvalue = min_eigenvalue(est.rho_hat);
  return est;
}

}  // namespace tetra
