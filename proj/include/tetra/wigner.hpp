#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "tetra/matrix.hpp"
#include "tetra/pauli.hpp"
#include "tetra/sic.hpp"
#include "tetra/tables.hpp"

namespace tetra {

struct IndexingMismatch : std::logic_error {
  IndexingMismatch()
      : std::logic_error("cannot combine detector-indexed and grid-indexed distributions") {}
};

// ---------------------------------------------------------------------------
// Qubit distributions
// ---------------------------------------------------------------------------

/// Coefficients w_{i,j} = (1/2) Tr(rho sigma_{i,j}); real for Hermitian rho.
struct WeylCoefficients {
  std::array<double, 4> w{};
  double& at(int i, int j) { return w[2 * i + j]; }
  double at(int i, int j) const { return w[2 * i + j]; }
};

inline WeylCoefficients weyl_coefficients(const Mat2& rho) {
  WeylCoefficients out;
  for (int idx = 0; idx < 4; ++idx)
    out.w[idx] = 0.5 * trace(rho * sigma(PauliIndex::from_index(idx))).real();
  return out;
}

/// Quasi-probability over the 2x2 phase-space grid, indexed (k,l).
struct QubitWigner {
  std::array<double, 4> w{};
  double& at(int k, int l) { return w[2 * k + l]; }
  double at(int k, int l) const { return w[2 * k + l]; }
  double sum() const { return w[0] + w[1] + w[2] + w[3]; }
};

/// The symplectic double-Fourier kernel on 2x2 coefficient arrays:
/// out_{k,l} = (1/2) sum_{i,j} (-1)^{i l - j k} in_{i,j}. Involutive.
inline std::array<double, 4> symplectic_transform(const std::array<double, 4>& in) {
  std::array<double, 4> out{};
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      double acc = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const int sign = ((i * l - j * k) % 2 + 2) % 2;
          acc += (sign ? -1.0 : 1.0) * in[2 * i + j];
        }
      out[2 * k + l] = 0.5 * acc;
    }
  return out;
}

inline QubitWigner qubit_wigner_from_weyl(const WeylCoefficients& w) {
  return QubitWigner{symplectic_transform(w.w)};
}

inline QubitWigner qubit_wigner(const Mat2& rho) {
  return qubit_wigner_from_weyl(weyl_coefficients(rho));
}

/// Affine map from the qubit Wigner distribution to tetrahedron detector
/// probabilities: P_{k,l} = (1/sqrt 3) W_{k,l} + (1 - 1/sqrt 3)/4.
inline std::array<double, 4> povm_probs_from_qubit_wigner(const QubitWigner& w) {
  std::array<double, 4> p{};
  for (int idx = 0; idx < 4; ++idx) p[idx] = kInvSqrt3 * w.w[idx] + 0.25 * (1.0 - kInvSqrt3);
  return p;
}

// ---------------------------------------------------------------------------
// Qubit phase-point operators
// ---------------------------------------------------------------------------

/// A complete set of 4 qubit phase-point operators, generated from the
/// fiducial (1/2)(I + sx sigma_x + sy sigma_y + sz sigma_z) by displacement
/// covariance: op at (k,l) is sigma_{k,l} fiducial sigma_{k,l}^dagger.
/// Parity is the product of the fiducial signs.
struct PhasePointSet {
  Parity parity = Parity::Even;
  std::array<int, 3> fiducial_signs = {1, 1, 1};
  std::array<Mat2, 4> ops{};

  const Mat2& op(int k, int l) const { return ops[2 * k + l]; }
};

inline PhasePointSet make_phase_point_set(int sx, int sy, int sz) {
  PhasePointSet set;
  set.fiducial_signs = {sx, sy, sz};
  set.parity = (sx * sy * sz > 0) ? Parity::Even : Parity::Odd;
  const Mat2 fiducial = 0.5 * (Mat2::identity() + bloch_dot_sigma(Vec3{double(sx), double(sy), double(sz)}));
  for (int idx = 0; idx < 4; ++idx) {
    const Mat2 u = sigma(PauliIndex::from_index(idx));
    set.ops[idx] = u * fiducial * adjoint(u);
  }
  return set;
}

/// Canonical sets: even from fiducial (+,+,+), odd from (-,-,-). With these,
/// the operator at label L points along the parity frame's direction at L,
/// scaled to the phase-space radius sqrt(3).
inline PhasePointSet phase_point_set(Parity parity) {
  return parity == Parity::Even ? make_phase_point_set(1, 1, 1) : make_phase_point_set(-1, -1, -1);
}

/// All 8 sign choices, grouped by parity: 4 even sets first, then 4 odd,
/// each group in lexicographic sign order (+ before -).
inline std::array<PhasePointSet, 8> enumerate_qubit_wigner_sets() {
  std::array<PhasePointSet, 8> out;
  int n_even = 0, n_odd = 0;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        PhasePointSet s = make_phase_point_set(sx, sy, sz);
        if (s.parity == Parity::Even)
          out[n_even++] = std::move(s);
        else
          out[4 + n_odd++] = std::move(s);
      }
  return out;
}

/// Orbit of a fiducial sign triple under conjugation by sigma_x, sigma_y,
/// sigma_z (and identity): the 4 sign triples of one displacement orbit.
inline std::array<std::array<int, 3>, 4> displacement_orbit(std::array<int, 3> signs) {
  const auto [sx, sy, sz] = signs;
  return {{{sx, sy, sz}, {sx, -sy, -sz}, {-sx, sy, -sz}, {-sx, -sy, sz}}};
}

// ---------------------------------------------------------------------------
// Quartit (two-qubit) Wigner distributions
// ---------------------------------------------------------------------------

/// 4x4 real quasi-probability. Detector indexing pairs Alice's detector k
/// with Bob's detector l; grid indexing uses the phase-space coordinates
/// (m,n) built from the two-bit labels. The tag prevents accidental mixing.
struct QuartitWigner {
  enum class Indexing { Detector, Grid };
  Indexing indexing = Indexing::Detector;
  std::array<double, 16> w{};

  double& at(int k, int l) { return w[4 * k + l]; }
  double at(int k, int l) const { return w[4 * k + l]; }

  double sum() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
  }
};

/// Two-qubit Wigner coefficients from joint detector statistics:
/// W_{k,l} = 3 P_{k,l} + sqrt(3)(1-sqrt(3))/4 (P^a_k + P^b_l) + ((1-sqrt(3))/4)^2.
/// With uniform marginals this collapses to W = 3P - 1/8.
inline QuartitWigner quartit_wigner_from_joint(const JointProbabilityTable& table) {
  if (std::abs(table.total() - 1.0) > 1e-9)
    throw NotNormalized("joint probability table must sum to 1");
  const double sqrt3 = 1.0 / kInvSqrt3;
  const double cross = sqrt3 * (1.0 - sqrt3) / 4.0;
  const double offset = (1.0 - sqrt3) / 4.0 * (1.0 - sqrt3) / 4.0;
  const auto pa = table.marginal_a();
  const auto pb = table.marginal_b();
  QuartitWigner out;
  out.indexing = QuartitWigner::Indexing::Detector;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      out.at(k, l) = 3.0 * table.at(k, l) + cross * (pa[k] + pb[l]) + offset;
  return out;
}

/// Direct coefficient map W_{k,l} = (1/4) Tr(rho W^a_k (x) W^b_l) with the
/// canonical phase-point sets of the given parities (detector indexed).
inline QuartitWigner quartit_coefficients(const Mat4& rho, Parity pa, Parity pb) {
  const PhasePointSet a = phase_point_set(pa);
  const PhasePointSet b = phase_point_set(pb);
  QuartitWigner out;
  out.indexing = QuartitWigner::Indexing::Detector;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      out.at(k, l) = 0.25 * trace(rho * tensor(a.ops[k], b.ops[l])).real();
  return out;
}

/// Reconstruction rho = sum_{k,l} W_{k,l} W^a_k (x) W^b_l. Exact inverse of
/// quartit_coefficients (the phase-point operators are orthogonal with
/// Tr(W W') = 2 delta, so W^a_k (x) W^b_l / 2 is an orthonormal basis).
inline Mat4 density_from_quartit_wigner(const QuartitWigner& w, Parity pa, Parity pb) {
  if (w.indexing != QuartitWigner::Indexing::Detector) throw IndexingMismatch();
  const PhasePointSet a = phase_point_set(pa);
  const PhasePointSet b = phase_point_set(pb);
  Mat4 rho;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) rho += w.at(k, l) * tensor(a.ops[k], b.ops[l]);
  return rho;
}

/// F = 4 sum_{k,l} W_exp W_ref; equals Tr(rho_exp rho_ref) when both are
/// reconstructed with matching parities.
inline double fidelity(const QuartitWigner& w_exp, const QuartitWigner& w_ref) {
  if (w_exp.indexing != w_ref.indexing) throw IndexingMismatch();
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += w_exp.w[i] * w_ref.w[i];
  return 4.0 * s;
}

// ---------------------------------------------------------------------------
// Phase-space grid
// ---------------------------------------------------------------------------

/// Grid coordinates of the product operator W^a_{i,j} (x) W^b_{k,l}:
/// m = i + 2k, n = j + 2l.
inline std::pair<int, int> grid_coordinates(int i_a, int j_a, int k_b, int l_b) {
  return {i_a + 2 * k_b, j_a + 2 * l_b};
}

namespace detail {
// Reindex detector-paired coefficients ((i,j) for a, (k,l) for b) onto the
// 4x4 phase-space grid.
inline QuartitWigner to_grid(const QuartitWigner& det) {
  QuartitWigner out;
  out.indexing = QuartitWigner::Indexing::Grid;
  for (int ka = 0; ka < 4; ++ka)
    for (int kb = 0; kb < 4; ++kb) {
      const PauliIndex la = PauliIndex::from_index(ka);
      const PauliIndex lb = PauliIndex::from_index(kb);
      const auto [m, n] = grid_coordinates(la.i, la.j, lb.i, lb.j);
      out.at(m, n) = det.at(ka, kb);
    }
  return out;
}
}  // namespace detail

/// Wigner distribution over the phase-space grid for the canonical
/// tetrahedron (x) anti-tetrahedron operator set.
inline QuartitWigner grid_distribution(const Mat4& rho) {
  return detail::to_grid(quartit_coefficients(rho, Parity::Even, Parity::Odd));
}

/// Alternative grid distribution obtained by staying in the
/// tetrahedron-tetrahedron configuration and passing to the grid through the
/// O-rotation equivalence (swap of b labels (0,1)<->(1,0), exchange of the
/// X_b/Z_b translation roles, signs flipped); numerically this places the
/// TT coefficients on the grid with the same coordinate formula.
inline QuartitWigner grid_distribution_tt_relabeled(const Mat4& rho) {
  return detail::to_grid(quartit_coefficients(rho, Parity::Even, Parity::Even));
}

// ---------------------------------------------------------------------------
// Product sets and striations
// ---------------------------------------------------------------------------

/// 16 two-qubit phase-point operators on the 4x4 grid, formed as products of
/// two qubit sets: op at (m,n) = A_{i,j} (x) B_{k,l} with m = i + 2k, n = j + 2l.
struct QuartitPhasePointSet {
  Parity parity_a = Parity::Even;
  Parity parity_b = Parity::Odd;
  std::array<Mat4, 16> ops{};

  const Mat4& op(int m, int n) const { return ops[4 * m + n]; }
};

inline QuartitPhasePointSet product_phase_point_set(const PhasePointSet& a,
                                                    const PhasePointSet& b) {
  QuartitPhasePointSet set;
  set.parity_a = a.parity;
  set.parity_b = b.parity;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const auto [m, n] = grid_coordinates(i, j, k, l);
          set.ops[4 * m + n] = tensor(a.ops[2 * i + j], b.ops[2 * k + l]);
        }
  return set;
}

/// One parallel class of 4 non-intersecting lines; the average of the
/// operators along each line is a rank-1 projector, and the 4 projectors of
/// a striation form an orthonormal basis.
struct Striation {
  std::array<std::array<int, 4>, 4> lines{};  // cell indices 4m+n
  std::array<Mat4, 4> projectors{};
  bool factorizable = false;
};

/// The 5 striations of a valid two-qubit phase-point set; bases from
/// different striations are mutually unbiased.
struct StriationStructure {
  std::array<Striation, 5> striations{};
  int n_factorizable = 0;
  int n_entangled = 0;
};

namespace detail {

inline constexpr std::array<std::array<int, 4>, 4> kGf4Mul = {{
    {0, 0, 0, 0},
    {0, 1, 2, 3},
    {0, 2, 3, 1},
    {0, 3, 1, 2},
}};

inline std::array<std::array<int, 4>, 24> all_permutations4() {
  std::array<std::array<int, 4>, 24> out{};
  std::array<int, 4> p = {0, 1, 2, 3};
  int n = 0;
  do {
    out[n++] = p;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct LineInfo {
  Mat4 average;
  bool rank1 = false;
  double reduced_purity = 0.0;  // purity of the left-reduced state when rank1
};

inline LineInfo line_average(const QuartitPhasePointSet& set, const std::array<int, 4>& cells) {
  LineInfo info;
  for (int c : cells) info.average += set.ops[c];
  info.average *= cx(0.25);
  const auto ev = hermitian_eigenvalues(info.average, 1e-9);
  info.rank1 = std::abs(ev[0]) < 1e-10 && std::abs(ev[1]) < 1e-10 && std::abs(ev[2]) < 1e-10 &&
               std::abs(ev[3] - 1.0) < 1e-10;
  if (info.rank1) {
    const Mat2 red = partial_trace_right(info.average);
    info.reduced_purity = trace(red * red).real();
  }
  return info;
}

}  // namespace detail

/// Exhaustive search for a 5-striation structure: rows, columns, and three
/// parallel classes of slope lines built with order-4 finite-field
/// arithmetic, sweeping all bijections between grid symbols and field
/// elements on each axis (24 x 24 candidates). A structure is valid when
/// every line average is a rank-1 projector, lines of one striation give
/// orthogonal projectors, and projectors from different striations have
/// pairwise overlap 1/4. Returns the first valid structure in search order,
/// or nullopt (expected for same-parity products).
inline std::optional<StriationStructure> find_striations(const QuartitPhasePointSet& set) {
  using detail::kGf4Mul;
  static const auto perms = detail::all_permutations4();

  // Axis-parallel lines are shared by every candidate structure.
  std::array<detail::LineInfo, 4> rows, cols;
  std::array<std::array<int, 4>, 4> row_cells{}, col_cells{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) row_cells[m][n] = 4 * m + n;
    rows[m] = detail::line_average(set, row_cells[m]);
  }
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) col_cells[n][m] = 4 * m + n;
    cols[n] = detail::line_average(set, col_cells[n]);
  }
  for (const auto& r : rows)
    if (!r.rank1) return std::nullopt;
  for (const auto& c : cols)
    if (!c.rank1) return std::nullopt;

  // Every other line of an affine structure is the graph of a permutation
  // m -> n; precompute all 24 of them once.
  std::array<detail::LineInfo, 24> graph{};
  std::array<std::array<int, 4>, 24> graph_cells{};
  for (int pi = 0; pi < 24; ++pi) {
    for (int m = 0; m < 4; ++m) graph_cells[pi][m] = 4 * m + perms[pi][m];
    graph[pi] = detail::line_average(set, graph_cells[pi]);
  }
  auto perm_id = [&](const std::array<int, 4>& p) {
    for (int pi = 0; pi < 24; ++pi)
      if (perms[pi] == p) return pi;
    return -1;
  };

  const auto overlap = [](const Mat4& a, const Mat4& b) { return trace(a * b).real(); };

  for (int fi = 0; fi < 24; ++fi) {
    const auto& f = perms[fi];
    for (int gi = 0; gi < 24; ++gi) {
      const auto& g = perms[gi];
      std::array<int, 4> g_inv{};
      for (int n = 0; n < 4; ++n) g_inv[g[n]] = n;

      // Slope striations: line (s,b) = { (m, g^{-1}(s*f(m) + b)) : m }.
      std::array<std::array<int, 4>, 3> slope_perm_ids{};
      bool ok = true;
      for (int s = 1; s <= 3 && ok; ++s) {
        for (int b = 0; b < 4 && ok; ++b) {
          std::array<int, 4> sigma{};
          for (int m = 0; m < 4; ++m) sigma[m] = g_inv[kGf4Mul[s][f[m]] ^ b];
          const int pi = perm_id(sigma);  // always a bijection for s != 0
          slope_perm_ids[s - 1][b] = pi;
          if (pi < 0 || !graph[pi].rank1) ok = false;
        }
      }
      if (!ok) continue;

      // Collect the 5 striations and check orthogonality/unbiasedness.
      std::array<std::array<const detail::LineInfo*, 4>, 5> cand{};
      std::array<std::array<const std::array<int, 4>*, 4>, 5> cand_cells{};
      for (int i = 0; i < 4; ++i) {
        cand[0][i] = &rows[i];
        cand_cells[0][i] = &row_cells[i];
        cand[1][i] = &cols[i];
        cand_cells[1][i] = &col_cells[i];
      }
      for (int s = 0; s < 3; ++s)
        for (int b = 0; b < 4; ++b) {
          cand[2 + s][b] = &graph[slope_perm_ids[s][b]];
          cand_cells[2 + s][b] = &graph_cells[slope_perm_ids[s][b]];
        }

      for (int u = 0; u < 5 && ok; ++u)
        for (int i = 0; i < 4 && ok; ++i) {
          for (int j = i + 1; j < 4 && ok; ++j)
            if (std::abs(overlap(cand[u][i]->average, cand[u][j]->average)) > 1e-10) ok = false;
          for (int v = u + 1; v < 5 && ok; ++v)
            for (int j = 0; j < 4 && ok; ++j)
              if (std::abs(overlap(cand[u][i]->average, cand[v][j]->average) - 0.25) > 1e-10)
                ok = false;
        }
      if (!ok) continue;

      StriationStructure out;
      for (int u = 0; u < 5; ++u) {
        Striation& st = out.striations[u];
        int fact_votes = 0;
        for (int i = 0; i < 4; ++i) {
          st.lines[i] = *cand_cells[u][i];
          st.projectors[i] = cand[u][i]->average;
          if (cand[u][i]->reduced_purity > 0.75) ++fact_votes;
        }
        if (fact_votes != 0 && fact_votes != 4) {
          ok = false;
          break;
        }
        st.factorizable = fact_votes == 4;
        (st.factorizable ? out.n_factorizable : out.n_entangled) += 1;
      }
      if (ok) return out;
    }
  }
  return std::nullopt;
}

/// Classification record for one ordered product of two qubit sets.
struct ProductSetRecord {
  int set_a = 0;  // index into enumerate_qubit_wigner_sets()
  int set_b = 0;
  Parity parity_a = Parity::Even;
  Parity parity_b = Parity::Even;
  bool valid = false;
};

/// Forms all 64 ordered products of the 8 qubit sets and classifies each by
/// whether a valid 5-striation structure exists. Exactly the 32 mixed-parity
/// products validate.
inline std::array<ProductSetRecord, 64> enumerate_quartit_wigner_sets() {
  const auto qubit_sets = enumerate_qubit_wigner_sets();
  std::array<ProductSetRecord, 64> out{};
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      ProductSetRecord& rec = out[8 * a + b];
      rec.set_a = a;
      rec.set_b = b;
      rec.parity_a = qubit_sets[a].parity;
      rec.parity_b = qubit_sets[b].parity;
      rec.valid = find_striations(product_phase_point_set(qubit_sets[a], qubit_sets[b]))
                      .has_value();
    }
  return out;
}

}  // namespace tetra
