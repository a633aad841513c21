#pragma once

#include <array>
#include <cstdint>

#include "tetra/sic.hpp"

namespace tetra {

/// Joint detector statistics of a two-qubit SIC-POVM measurement.
/// p(k,l) is the probability that Alice's detector k fires together with
/// Bob's detector l; frame parities record the measurement configuration.
struct JointProbabilityTable {
  std::array<double, 16> p{};
  Parity frame_a = Parity::Even;
  Parity frame_b = Parity::Even;

  double& at(int k, int l) { return p[4 * k + l]; }
  double at(int k, int l) const { return p[4 * k + l]; }

  double total() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }

  std::array<double, 4> marginal_a() const {
    std::array<double, 4> m{};
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) m[k] += at(k, l);
    return m;
  }

  std::array<double, 4> marginal_b() const {
    std::array<double, 4> m{};
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) m[l] += at(k, l);
    return m;
  }
};

/// Raw coincidence counts for a finite-shot experiment.
struct CountTable {
  std::array<std::uint64_t, 16> counts{};
  std::uint64_t shots = 0;

  std::uint64_t& at(int k, int l) { return counts[4 * k + l]; }
  std::uint64_t at(int k, int l) const { return counts[4 * k + l]; }

  JointProbabilityTable frequencies(Parity pa, Parity pb) const {
    JointProbabilityTable t;
    t.frame_a = pa;
    t.frame_b = pb;
    for (int i = 0; i < 16; ++i) t.p[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    return t;
  }
};

}  // namespace tetra
