#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <numbers>

#include "tetra/correlations.hpp"
#include "tetra/sim.hpp"
#include "support.hpp"

using namespace tetra;

TEST_CASE("permutation census matches the class structure") {
  const auto perms = enumerate_top_permutations();
  REQUIRE(perms.size() == 24);

  std::map<std::tuple<Parity, int, int>, int> census;
  for (const auto& p : perms) ++census[{p.parity, p.order, p.fixed_points}];

  CHECK(census[{Parity::Even, 1, 4}] == 1);
  CHECK(census[{Parity::Even, 2, 0}] == 3);
  CHECK(census[{Parity::Odd, 2, 2}] == 6);
  CHECK(census[{Parity::Even, 3, 1}] == 8);
  CHECK(census[{Parity::Odd, 4, 0}] == 6);
  CHECK(census.size() == 5);
}

TEST_CASE("realizers act on the tetrahedron as labelled and are orthogonal") {
  const auto perms = enumerate_top_permutations();
  for (const auto& p : perms) {
    const Mat3 rtr = transpose(p.realizer) * p.realizer;
    CHECK(std::abs(rtr(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(rtr(1, 1) - 1.0) < 1e-12);
    CHECK(std::abs(rtr(0, 1)) < 1e-12);

    for (int k = 0; k < 4; ++k)
      CHECK(norm(p.realizer.apply(kTetrahedron[k]) - kTetrahedron[p.mapping[k]]) < 1e-12);

    const double d = det(p.realizer);
    CHECK(std::abs(std::abs(d) - 1.0) < 1e-12);
    CHECK((p.parity == Parity::Even) == (d > 0.0));

    // determinant parity agrees with the count-of-transpositions definition
    const int odd_by_inversions = detail::transposition_parity(p.mapping);
    CHECK((p.parity == Parity::Odd) == (odd_by_inversions == 1));
  }
}

TEST_CASE("named permutations") {
  const auto perms = enumerate_top_permutations();

  SECTION("identity") {
    const auto& id = perms[0];
    REQUIRE(id.mapping == std::array<int, 4>{0, 1, 2, 3});
    CHECK(id.parity == Parity::Even);
    CHECK(id.order == 1);
    CHECK(max_abs_diff(id.realizer, Mat3::identity()) < 1e-12);
  }

  SECTION("swap of labels (0,1) and (1,0)") {
    for (const auto& p : perms) {
      if (p.mapping != std::array<int, 4>{0, 2, 1, 3}) continue;
      CHECK(p.parity == Parity::Odd);
      CHECK(p.order == 2);
      CHECK(p.fixed_points == 2);
      return;
    }
    FAIL("swap permutation not found");
  }
}

TEST_CASE("even realizers are the tetrahedron rotation group") {
  const auto perms = enumerate_top_permutations();
  std::vector<Mat3> rotations;
  for (const auto& p : perms) {
    if (p.parity != Parity::Even) continue;
    rotations.push_back(p.realizer);
    // rotation angle classes: identity (trace 3), 180 degrees (-1), +-120 (0)
    const double tr = p.realizer(0, 0) + p.realizer(1, 1) + p.realizer(2, 2);
    if (p.order == 1) CHECK(tr == Catch::Approx(3.0).margin(1e-12));
    if (p.order == 2) CHECK(tr == Catch::Approx(-1.0).margin(1e-12));
    if (p.order == 3) CHECK(tr == Catch::Approx(0.0).margin(1e-12));
  }
  REQUIRE(rotations.size() == 12);

  const auto contains = [&](const Mat3& m) {
    for (const auto& r : rotations)
      if (max_abs_diff(r, m) < 1e-9) return true;
    return false;
  };
  for (const auto& a : rotations)
    for (const auto& b : rotations) CHECK(contains(a * b));

  // product of two odd realizers is even
  std::vector<Mat3> reflections;
  for (const auto& p : perms)
    if (p.parity == Parity::Odd) reflections.push_back(p.realizer);
  for (const auto& a : reflections)
    for (const auto& b : reflections) CHECK(contains(a * b));
}

TEST_CASE("every odd permutation splits into the (0,1)(1,0) swap and an even one") {
  const auto perms = enumerate_top_permutations();
  constexpr std::array<int, 4> swap = {0, 2, 1, 3};
  const auto is_even = [&](const std::array<int, 4>& m) {
    for (const auto& p : perms)
      if (p.mapping == m) return p.parity == Parity::Even;
    return false;
  };
  for (const auto& p : perms) {
    if (p.parity != Parity::Odd) continue;
    std::array<int, 4> composed{};
    for (int k = 0; k < 4; ++k) composed[k] = swap[p.mapping[k]];
    CHECK(is_even(composed));
  }
}

TEST_CASE("even permutations are realized by explicit unitaries") {
  // identity; 180-degree rotations about X, Y, Z; +-120 degrees about a top
  const auto perms = enumerate_top_permutations();
  const Frame f = frame(Parity::Even);
  for (const auto& p : perms) {
    if (p.parity != Parity::Even) continue;
    Mat2 u;
    if (p.order == 1) {
      u = Mat2::identity();
    } else if (p.order == 2) {
      // realizer is diagonal +1/-1/-1 about one coordinate axis
      int axis = -1;
      for (int d = 0; d < 3; ++d) {
        bool diagonal = true;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c)
            if (r != c && std::abs(p.realizer(r, c)) > 1e-12) diagonal = false;
        if (diagonal && p.realizer(d, d) > 0.5) axis = d;
      }
      REQUIRE(axis >= 0);
      u = sigma(PauliIndex::from_index(axis == 0 ? 2 : (axis == 1 ? 3 : 1)));
    } else {
      // order 3: rotation about the fixed top by +-120 degrees
      int fixed = -1;
      for (int k = 0; k < 4; ++k)
        if (p.mapping[k] == k) fixed = k;
      REQUIRE(fixed >= 0);
      bool matched = false;
      for (double angle : {2.0 * std::numbers::pi / 3.0, -2.0 * std::numbers::pi / 3.0}) {
        const Mat2 cand = rotation_unitary(f.directions[fixed], angle);
        bool all = true;
        for (int k = 0; k < 4; ++k) {
          const Vec3 image = bloch_of(cand * density_from_bloch(f.directions[k]) * adjoint(cand));
          all = all && norm(image - f.directions[p.mapping[k]]) < 1e-12;
        }
        if (all) {
          u = cand;
          matched = true;
          break;
        }
      }
      REQUIRE(matched);
      continue;  // already verified against the mapping
    }
    for (int k = 0; k < 4; ++k) {
      const Vec3 image = bloch_of(u * density_from_bloch(f.directions[k]) * adjoint(u));
      CHECK(norm(image - f.directions[p.mapping[k]]) < 1e-12);
    }
  }
}

TEST_CASE("the three nonidentity displacement permutations appear as even order-2 realizers") {
  const auto perms = enumerate_top_permutations();
  for (int s = 1; s < 4; ++s) {
    const auto label_perm = pauli_label_action(PauliIndex::from_index(s));
    bool found = false;
    for (const auto& p : perms) {
      std::array<int, 4> as_int{};
      for (int k = 0; k < 4; ++k) as_int[k] = label_perm[k];
      if (p.mapping == as_int) {
        CHECK(p.parity == Parity::Even);
        CHECK(p.order == 2);
        CHECK(p.fixed_points == 0);
        found = true;
      }
    }
    CHECK(found);
  }
}

namespace {
const TopPermutation& identity_perm() {
  static const auto perms = enumerate_top_permutations();
  return perms[0];
}
}  // namespace

TEST_CASE("candidate states at the identity relabeling") {
  SECTION("TT anticorrelated: the singlet") {
    const auto cand = candidate_state(Config::TT, Mode::Anticorrelated, identity_perm());
    CHECK(max_abs_diff(cand.matrix, singlet_projector()) < 1e-13);
    CHECK(cand.is_physical());
    CHECK(cand.physicality == Physicality::Boundary);  // pure states sit on the cone boundary
    CHECK(std::abs(cand.min_eigenvalue) < 1e-12);
  }

  SECTION("TT correlated: eigenvalues {-2, 1, 1, 1}") {
    const auto cand = candidate_state(Config::TT, Mode::Correlated, identity_perm());
    Mat4 expected = Mat4::identity();
    expected += cx(3.0) * (tensor(sigma_x(), sigma_x()) + tensor(sigma_y(), sigma_y()) +
                           tensor(sigma_z(), sigma_z()));
    expected *= cx(0.25);
    CHECK(max_abs_diff(cand.matrix, expected) < 1e-13);
    CHECK(!cand.is_physical());
    const auto ev = hermitian_eigenvalues(cand.matrix);
    CHECK(ev[0] == Catch::Approx(-2.0).margin(1e-12));
    CHECK(ev[1] == Catch::Approx(1.0).margin(1e-12));
    CHECK(ev[3] == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("TA anticorrelated: eigenvalues {-1/2, 1/2, 1/2, 1/2}") {
    const auto cand = candidate_state(Config::TA, Mode::Anticorrelated, identity_perm());
    Mat4 expected = Mat4::identity();
    expected += tensor(sigma_x(), sigma_x()) + tensor(sigma_y(), sigma_y()) +
                tensor(sigma_z(), sigma_z());
    expected *= cx(0.25);
    CHECK(max_abs_diff(cand.matrix, expected) < 1e-13);
    CHECK(!cand.is_physical());
    const auto ev = hermitian_eigenvalues(cand.matrix);
    CHECK(ev[0] == Catch::Approx(-0.5).margin(1e-12));
    CHECK(ev[3] == Catch::Approx(0.5).margin(1e-12));
  }

  SECTION("TA correlated: eigenvalues {-1/2, -1/2, -1/2, 5/2}") {
    const auto cand = candidate_state(Config::TA, Mode::Correlated, identity_perm());
    const auto ev = hermitian_eigenvalues(cand.matrix);
    CHECK(ev[0] == Catch::Approx(-0.5).margin(1e-12));
    CHECK(ev[2] == Catch::Approx(-0.5).margin(1e-12));
    CHECK(ev[3] == Catch::Approx(2.5).margin(1e-12));
    CHECK(!cand.is_physical());
  }
}

TEST_CASE("candidates have trace 1 and uniform single-side marginals") {
  const auto perms = enumerate_top_permutations();
  for (const auto& p : perms) {
    for (Config config : {Config::TT, Config::TA})
      for (Mode mode : {Mode::Correlated, Mode::Anticorrelated}) {
        const auto cand = candidate_state(config, mode, p);
        CHECK(trace(cand.matrix).real() == Catch::Approx(1.0).margin(1e-12));
        CHECK(hermiticity_error(cand.matrix) < 1e-12);
        // reduced states of the reconstruction are maximally mixed by
        // construction (uniform marginals of the imposed tables)
        CHECK(max_abs_diff(partial_trace_right(cand.matrix), 0.5 * Mat2::identity()) < 1e-12);
        CHECK(max_abs_diff(partial_trace_left(cand.matrix), 0.5 * Mat2::identity()) < 1e-12);
      }
  }
}

TEST_CASE("bell states realize the anticorrelated candidates of the displacement permutations") {
  const auto perms = enumerate_top_permutations();
  for (int c = 0; c < 4; ++c) {
    const Mat4 rho = bell_state(BellLabel::from_index(c));
    const auto table = joint_table(rho, Parity::Even, Parity::Even);
    const auto label_perm = pauli_label_action(PauliIndex::from_index(c));

    // the TT table of a Bell state is exactly the anticorrelated pattern of
    // its label permutation: zeros where perm(k) = l, 1/12 elsewhere
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) {
        const double expected = label_perm[k] == l ? 0.0 : 1.0 / 12.0;
        REQUIRE(table.at(k, l) == Catch::Approx(expected).margin(1e-13));
      }

    for (const auto& p : perms) {
      std::array<int, 4> as_int{};
      for (int k = 0; k < 4; ++k) as_int[k] = label_perm[k];
      if (p.mapping != as_int) continue;
      const auto cand = candidate_state(Config::TT, Mode::Anticorrelated, p);
      CHECK(max_abs_diff(cand.matrix, rho) < 1e-12);
    }
  }
}

TEST_CASE("property sweep over all 96 candidates") {
  const PropertyReport rep = verify_properties_abc();
  REQUIRE(rep.candidates.size() == 96);

  CHECK(rep.property_a);
  CHECK(rep.property_b);
  CHECK(rep.property_c);
  CHECK(rep.all_ok);
  CHECK(rep.physical_tt_anticorrelated == 12);
  CHECK(rep.physical_ta_anticorrelated == 12);
  CHECK(rep.physical_correlated == 0);

  SECTION("physicality is decided by the configuration parity") {
    int physical = 0, eig_minus_2 = 0, eig_minus_half = 0;
    for (const auto& rec : rep.candidates) {
      const bool even_cfg = is_even_configuration(rec.config, rec.perm_parity);
      const bool physical_expected = rec.mode == Mode::Anticorrelated && even_cfg;
      REQUIRE((rec.physicality != Physicality::NonPhysical) == physical_expected);
      if (physical_expected) {
        ++physical;
        CHECK(rec.pure);
        CHECK(rec.maximally_entangled);
        CHECK(std::abs(rec.min_eigenvalue) < 1e-9);
      } else if (std::abs(rec.min_eigenvalue + 2.0) < 1e-9) {
        ++eig_minus_2;
      } else {
        REQUIRE(std::abs(rec.min_eigenvalue + 0.5) < 1e-9);
        ++eig_minus_half;
      }
    }
    CHECK(physical == 24);  // 12 per base configuration family
    CHECK(eig_minus_2 == 24);
    CHECK(eig_minus_half == 48);
  }

  SECTION("the 24 physical candidates are 24 distinct states") {
    std::vector<Mat4> states;
    for (const auto& rec : rep.candidates) {
      if (rec.physicality == Physicality::NonPhysical || rec.mode == Mode::Correlated) continue;
      const auto perms = enumerate_top_permutations();
      states.push_back(candidate_state(rec.config, rec.mode, perms[rec.perm_index]).matrix);
    }
    REQUIRE(states.size() == 24);
    for (std::size_t a = 0; a < states.size(); ++a)
      for (std::size_t b = a + 1; b < states.size(); ++b)
        CHECK(max_abs_diff(states[a], states[b]) > 1e-3);
  }
}
