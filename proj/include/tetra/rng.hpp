#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace tetra {

/// Deterministic pseudorandom stream. std::mt19937_64 output is fully
/// specified by the standard, so sequences are reproducible across platforms
/// and compilers for a given seed. The mapping to doubles is pinned here
/// (never via std::uniform_real_distribution, whose output is
/// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Identifier recorded in output metadata; bump when the stream or any
  /// mapping below changes.
  static constexpr std::string_view stream_version() { return "mt19937_64/v1"; }

  std::uint64_t raw() { return gen_(); }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Draw an index from a categorical distribution (probs sum to 1).
  /// Cells with probability exactly 0.0 are never selected.
  template <std::size_t N>
  int categorical(const std::array<double, N>& probs) {
    const double u = uniform01();
    double cum = 0.0;
    int last_nonzero = 0;
    for (std::size_t i = 0; i < N; ++i) {
      if (probs[i] > 0.0) {
        last_nonzero = static_cast<int>(i);
        cum += probs[i];
        if (u < cum) return static_cast<int>(i);
      }
    }
    return last_nonzero;  // top-end floating-point slack lands in the last nonzero cell
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tetra
