#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tetra/matrix.hpp"
#include "tetra/sic.hpp"
#include "tetra/tables.hpp"
#include "tetra/vec3.hpp"
#include "tetra/wigner.hpp"

namespace tetra {

/// Measurement configuration: both sides tetrahedron (TT) or tetrahedron
/// against anti-tetrahedron (TA).
enum class Config { TT, TA };

/// Correlation pattern imposed on the joint detector statistics.
enum class Mode { Correlated, Anticorrelated };

enum class Physicality { Physical, Boundary, NonPhysical };

/// A permutation of the four tetrahedron tops together with the signed
/// orthogonal 3x3 matrix realising it on the Bloch sphere. Parity follows
/// the determinant of the realizer: +1 even (rotation), -1 odd.
struct TopPermutation {
  std::array<int, 4> mapping{};  // label index -> label index
  Parity parity = Parity::Even;
  int order = 1;
  int fixed_points = 4;
  Mat3 realizer = Mat3::identity();
};

namespace detail {

inline Mat3 realizer_of(const std::array<int, 4>& mapping) {
  // With sum_k t_k t_k^T = (4/3) I and sum_k t_k = 0, the unique orthogonal
  // map sending t_k to t_{mapping[k]} is (3/4) sum_k t_{mapping[k]} t_k^T.
  Mat3 r;
  for (int k = 0; k < 4; ++k) {
    const Vec3 src = kTetrahedron[k];
    const Vec3 dst = kTetrahedron[mapping[k]];
    const std::array<double, 3> s = {src.x, src.y, src.z};
    const std::array<double, 3> d = {dst.x, dst.y, dst.z};
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v) r(u, v) += 0.75 * d[u] * s[v];
  }
  return r;
}

inline int permutation_order(const std::array<int, 4>& mapping) {
  std::array<int, 4> acc = {0, 1, 2, 3};
  for (int n = 1; n <= 4; ++n) {
    std::array<int, 4> next{};
    for (int k = 0; k < 4; ++k) next[k] = mapping[acc[k]];
    acc = next;
    if (acc == std::array<int, 4>{0, 1, 2, 3}) return n;
  }
  return 4;
}

inline int transposition_parity(const std::array<int, 4>& mapping) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (mapping[i] > mapping[j]) ++inversions;
  return inversions % 2;  // 0 even, 1 odd
}

}  // namespace detail

/// All 24 permutations of the tetrahedron tops, lexicographic by mapping.
/// Census: 1 identity, 3 even of order 2 (no fixed top), 6 odd of order 2
/// (two fixed tops), 8 even of order 3 (one fixed top), 6 odd of order 4.
inline std::vector<TopPermutation> enumerate_top_permutations() {
  std::vector<TopPermutation> out;
  out.reserve(24);
  std::array<int, 4> p = {0, 1, 2, 3};
  do {
    TopPermutation tp;
    tp.mapping = p;
    tp.realizer = detail::realizer_of(p);
    tp.parity = det(tp.realizer) > 0.0 ? Parity::Even : Parity::Odd;
    tp.order = detail::permutation_order(p);
    tp.fixed_points = 0;
    for (int k = 0; k < 4; ++k)
      if (p[k] == k) ++tp.fixed_points;
    out.push_back(tp);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Hermitian trace-1 candidate for a (configuration, correlation-mode,
/// relabeling) triple, with its physicality verdict.
struct CandidateOperator {
  Mat4 matrix;
  double min_eigenvalue = 0.0;
  Physicality physicality = Physicality::Physical;

  bool is_physical() const { return physicality != Physicality::NonPhysical; }
};

/// Builds the joint table P_{k,l} = (1/4) delta_{perm(k),l} (correlated) or
/// (1/12)(1 - delta_{perm(k),l}) (anticorrelated), converts it to Wigner
/// coefficients, and reconstructs the unique operator with phase-point
/// parities (even,even) for TT and (even,odd) for TA.
inline CandidateOperator candidate_state(Config config, Mode mode, const TopPermutation& perm) {
  JointProbabilityTable table;
  table.frame_a = Parity::Even;
  table.frame_b = config == Config::TT ? Parity::Even : Parity::Odd;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const bool hit = perm.mapping[k] == l;
      table.at(k, l) = mode == Mode::Correlated ? (hit ? 0.25 : 0.0)
                                                : (hit ? 0.0 : 1.0 / 12.0);
    }
  const QuartitWigner w = quartit_wigner_from_joint(table);
  CandidateOperator cand;
  cand.matrix = density_from_quartit_wigner(w, table.frame_a, table.frame_b);
  cand.min_eigenvalue = min_eigenvalue(cand.matrix);
  if (cand.min_eigenvalue < -1e-9)
    cand.physicality = Physicality::NonPhysical;
  else if (cand.min_eigenvalue < 1e-9)
    cand.physicality = Physicality::Boundary;
  else
    cand.physicality = Physicality::Physical;
  return cand;
}

struct CandidateRecord {
  Config config = Config::TT;
  Mode mode = Mode::Correlated;
  int perm_index = 0;
  Parity perm_parity = Parity::Even;
  double min_eigenvalue = 0.0;
  Physicality physicality = Physicality::Physical;
  bool pure = false;
  bool maximally_entangled = false;
};

/// Full sweep over 24 permutations x {TT,TA} x {correlated,anticorrelated}.
///
/// The parity of a whole configuration is the base parity (TT even, TA odd)
/// combined with the relabeling parity. The certified properties:
///   A: in every even configuration there is exactly one state with
///      symmetric anti-correlations, and it is pure and maximally entangled
///      (hence singlet-equivalent up to local unitaries). That is 12 TT
///      candidates (even relabelings) and 12 TA candidates (odd relabelings).
///   B: no odd configuration admits an anti-correlation state.
///   C: no configuration admits a perfect-correlation state.
struct PropertyReport {
  std::vector<CandidateRecord> candidates;
  int physical_tt_anticorrelated = 0;  // expect 12
  int physical_ta_anticorrelated = 0;  // expect 12
  int physical_correlated = 0;         // expect 0
  bool property_a = false;
  bool property_b = false;
  bool property_c = false;
  bool all_ok = false;
};

inline bool is_even_configuration(Config config, Parity perm_parity) {
  return (config == Config::TT) == (perm_parity == Parity::Even);
}

inline PropertyReport verify_properties_abc() {
  const auto perms = enumerate_top_permutations();
  PropertyReport rep;
  rep.property_a = rep.property_b = rep.property_c = true;
  const Mat2 half_identity = 0.5 * Mat2::identity();
  for (Config config : {Config::TT, Config::TA})
    for (Mode mode : {Mode::Correlated, Mode::Anticorrelated})
      for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        const CandidateOperator cand = candidate_state(config, mode, perms[pi]);
        CandidateRecord rec;
        rec.config = config;
        rec.mode = mode;
        rec.perm_index = static_cast<int>(pi);
        rec.perm_parity = perms[pi].parity;
        rec.min_eigenvalue = cand.min_eigenvalue;
        rec.physicality = cand.physicality;
        const Mat4& rho = cand.matrix;
        rec.pure = std::abs(trace(rho * rho).real() - 1.0) < 1e-10;
        rec.maximally_entangled =
            max_abs_diff(partial_trace_right(rho), half_identity) < 1e-10 &&
            max_abs_diff(partial_trace_left(rho), half_identity) < 1e-10;
        rep.candidates.push_back(rec);

        const bool physical = cand.is_physical();
        if (mode == Mode::Correlated) {
          if (physical) {
            ++rep.physical_correlated;
            rep.property_c = false;
          }
        } else {
          if (physical)
            ++(config == Config::TT ? rep.physical_tt_anticorrelated
                                    : rep.physical_ta_anticorrelated);
          if (is_even_configuration(config, perms[pi].parity)) {
            if (!physical || !rec.pure || !rec.maximally_entangled) rep.property_a = false;
          } else if (physical) {
            rep.property_b = false;
          }
        }
      }
  rep.property_a = rep.property_a && rep.physical_tt_anticorrelated == 12 &&
                   rep.physical_ta_anticorrelated == 12;
  rep.all_ok = rep.property_a && rep.property_b && rep.property_c;
  return rep;
}

}  // namespace tetra
