#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "tetra/pauli.hpp"
#include "tetra/sic.hpp"
#include "support.hpp"

using namespace tetra;

namespace {
Mat2 conj_by(const Mat2& u, const Mat2& m) { return u * m * adjoint(u); }
}

TEST_CASE("sigma matrices match the fixed conventions") {
  const Mat2 id = sigma({0, 0});
  CHECK(max_abs_diff(id, Mat2::identity()) == 0.0);

  const Mat2 z = sigma({0, 1});
  CHECK(z(0, 0) == cx(1.0));
  CHECK(z(1, 1) == cx(-1.0));
  CHECK(z(0, 1) == cx(0.0));

  const Mat2 y = sigma({1, 1});
  CHECK(y(0, 1) == cx(0.0, -1.0));
  CHECK(y(1, 0) == cx(0.0, 1.0));
  CHECK(y(0, 0) == cx(0.0));

  // sigma_x, sigma_z real; sigma_y purely imaginary off-diagonal
  const Mat2 x = sigma({1, 0});
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      CHECK(x(r, c).imag() == 0.0);
      CHECK(z(r, c).imag() == 0.0);
      CHECK(y(r, c).real() == 0.0);
    }
}

TEST_CASE("pauli products close onto the group up to phase") {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Mat2 prod = sigma(PauliIndex::from_index(a)) * sigma(PauliIndex::from_index(b));
      bool matched = false;
      for (int c = 0; c < 4 && !matched; ++c) {
        for (const cx phase : {cx(1), cx(-1), cx(0, 1), cx(0, -1)}) {
          if (max_abs_diff(prod, phase * sigma(PauliIndex::from_index(c))) < 1e-14) {
            matched = true;
            break;
          }
        }
      }
      CHECK(matched);
    }
}

TEST_CASE("singlet projector and its Pauli expansion") {
  Mat4 expansion = Mat4::identity();
  expansion -= tensor(sigma_x(), sigma_x());
  expansion -= tensor(sigma_y(), sigma_y());
  expansion -= tensor(sigma_z(), sigma_z());
  expansion *= cx(0.25);
  CHECK(max_abs_diff(bell_state({0, 0}), expansion) < 1e-15);
  CHECK(max_abs_diff(bell_state({0, 0}), singlet_projector()) < 1e-15);
}

TEST_CASE("bell state (0,1) is the projector onto (|10>+|01>)/sqrt 2") {
  const double h = 1.0 / std::sqrt(2.0);
  const Mat4 expected = test::projector({0.0, h, h, 0.0});
  CHECK(max_abs_diff(bell_state({0, 1}), expected) < 1e-15);
}

TEST_CASE("bell states are pure, maximally entangled and mutually orthogonal") {
  const Mat2 half = 0.5 * Mat2::identity();
  for (int a = 0; a < 4; ++a) {
    const Mat4 rho = bell_state(BellLabel::from_index(a));
    CHECK(trace(rho).real() == Catch::Approx(1.0).margin(1e-14));
    CHECK(trace(rho * rho).real() == Catch::Approx(1.0).margin(1e-14));
    CHECK(max_abs_diff(partial_trace_right(rho), half) < 1e-14);
    CHECK(max_abs_diff(partial_trace_left(rho), half) < 1e-14);
    for (int b = a + 1; b < 4; ++b)
      CHECK(std::abs(trace(rho * bell_state(BellLabel::from_index(b)))) < 1e-12);
  }
}

TEST_CASE("rotation unitaries") {
  CHECK(max_abs_diff(rotation_unitary({0, 0, 1}, 0.0), Mat2::identity()) < 1e-15);

  SECTION("unitarity") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      Vec3 axis{test::gaussian(rng), test::gaussian(rng), test::gaussian(rng)};
      axis = (1.0 / norm(axis)) * axis;
      const Mat2 u = rotation_unitary(axis, 7.1 * rng.uniform01());
      CHECK(max_abs_diff(u * adjoint(u), Mat2::identity()) < 1e-12);
    }
  }

  SECTION("180 degrees about Z flips the X axis") {
    const Mat2 u = rotation_unitary({0, 0, 1}, std::numbers::pi);
    const Vec3 p = bloch_of(conj_by(u, density_from_bloch({1, 0, 0})));
    CHECK(p.x == Catch::Approx(-1.0).margin(1e-12));
    CHECK(std::abs(p.y) < 1e-12);
    CHECK(std::abs(p.z) < 1e-12);
  }

  SECTION("120 degrees about (1,1,1) cycles the Bloch axes") {
    const Mat2 u = rotation_unitary({kInvSqrt3, kInvSqrt3, kInvSqrt3}, 2.0 * std::numbers::pi / 3.0);
    const Vec3 im_x = bloch_of(conj_by(u, density_from_bloch({1, 0, 0})));
    CHECK(im_x.y == Catch::Approx(1.0).margin(1e-12));
    const Vec3 im_y = bloch_of(conj_by(u, density_from_bloch({0, 1, 0})));
    CHECK(im_y.z == Catch::Approx(1.0).margin(1e-12));
    const Vec3 im_z = bloch_of(conj_by(u, density_from_bloch({0, 0, 1})));
    CHECK(im_z.x == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("non-unit axis is rejected") {
    CHECK_THROWS_AS(rotation_unitary({1, 1, 0}, 0.3), BadAxis);
  }
}

TEST_CASE("pauli conjugation permutes the tetrahedron tops as labelled") {
  const Frame f = frame(Parity::Even);
  for (int s = 1; s < 4; ++s) {
    const PauliIndex idx = PauliIndex::from_index(s);
    const Mat2 u = sigma(idx);
    const auto perm = pauli_label_action(idx);
    int fixed = 0;
    for (int k = 0; k < 4; ++k) {
      const Vec3 image = bloch_of(conj_by(u, density_from_bloch(f.directions[k])));
      CHECK(norm(image - f.directions[perm[k]]) < 1e-12);
      if (perm[k] == k) ++fixed;
    }
    // each nonidentity displacement is an even order-2 permutation without fixed tops
    CHECK(fixed == 0);
  }
}
